//! Oracles shared by the integration tests. Nothing here calls the engine's
//! reducer or elimination code.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use pbw_core::catalog::CatalogEntry;
use pbw_core::coeff::{Assignment, Rational};
use pbw_core::relations::RelationSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Poly = BTreeMap<Vec<usize>, Rational>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Straightforward rewriting with memoised word normal forms: the first
/// descent `x_j x_i` is replaced by `x_i x_j + [x_j, x_i]`.
pub struct NaiveReducer {
    rules: HashMap<(usize, usize), Poly>,
    memo: HashMap<Vec<usize>, Poly>,
}

impl NaiveReducer {
    /// Brackets are read off at a numeric point.
    pub fn new(r: &RelationSet) -> NaiveReducer {
        let mut rules = HashMap::new();
        for ((j, i), p) in r.brackets() {
            let mut out = Poly::new();
            for (w, c) in p.terms() {
                let c = c.as_rational().expect("numeric relations");
                out.insert(w.letters().iter().map(|&x| x as usize).collect(), c);
            }
            rules.insert((j, i), out);
        }
        NaiveReducer { rules, memo: HashMap::new() }
    }

    pub fn word(&mut self, w: &[usize]) -> Poly {
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let Some(pos) = (0..w.len().saturating_sub(1)).find(|&k| w[k] > w[k + 1]) else {
            let mut p = Poly::new();
            p.insert(w.to_vec(), Rational::one());
            return p;
        };
        let (j, i) = (w[pos], w[pos + 1]);
        let mut swapped = w.to_vec();
        swapped.swap(pos, pos + 1);
        let mut out = self.word(&swapped);
        if let Some(rhs) = self.rules.get(&(j, i)).cloned() {
            for (m, c) in rhs {
                let mut v = w[..pos].to_vec();
                v.extend(&m);
                v.extend(&w[pos + 2..]);
                for (u, k) in self.word(&v) {
                    add(&mut out, u, &c * &k);
                }
            }
        }
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    pub fn poly(&mut self, f: &Poly) -> Poly {
        let mut out = Poly::new();
        for (w, c) in f {
            for (u, k) in self.word(w) {
                add(&mut out, u, c * &k);
            }
        }
        out
    }
}

pub fn add(p: &mut Poly, w: Vec<usize>, c: Rational) {
    let e = p.entry(w.clone()).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&w);
    }
}

/// Engine polynomial with rational coefficients as an oracle polynomial.
pub fn to_poly(f: &pbw_core::NCPoly) -> Poly {
    f.terms()
        .map(|(w, c)| (w.letters().iter().map(|&x| x as usize).collect(), c.as_rational().expect("numeric")))
        .collect()
}

/// Rank by textbook row reduction over the rationals.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for k in 0..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// A random rational `p/q` with `|p| <= 40`, `1 <= q <= 50`, nonzero.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-40..=40);
        let d: i64 = rng.gen_range(1..=50);
        if p != 0 {
            return q(p, d);
        }
    }
}

/// A point where no exclusion or relation denominator vanishes.
pub fn admissible_point(e: &CatalogEntry, rng: &mut impl Rng) -> (Assignment, RelationSet) {
    let r = e.relations();
    for _ in 0..1000 {
        let a: Assignment = r.params().iter().map(|&s| (s, small_rational(rng))).collect();
        if let Ok(spec) = e.instantiate(&a) {
            return (a, spec);
        }
    }
    panic!("no admissible point for {}", e.id);
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All words over `n` letters of length `1..=max_len`, sampled uniformly by
/// length then letters.
pub fn random_word(n: usize, max_len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| rng.gen_range(0..n)).collect()
}
