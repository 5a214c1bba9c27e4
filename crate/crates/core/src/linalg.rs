//! Exact nullspaces of sparse matrices over the rationals and over the
//! rational-function field.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::coeff::{clear_denominators, ParamPoly, RatFunc, Rational};

/// A sparse row: column index to nonzero entry.
pub type Row<T> = BTreeMap<usize, T>;

/// Nullspace basis over the rationals by Gauss-Jordan elimination. Each
/// vector has a 1 in its free column and is scaled to integer entries with
/// the first nonzero entry positive.
pub fn nullspace_rational(rows: &[Row<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Row<Rational>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut pivots: Vec<(usize, Row<Rational>)> = Vec::new();
    while let Some(k) = pick_pivot(&rows, |c: &Rational| c.numer().bits() as usize + c.denom().bits() as usize) {
        let (pr, pc) = k;
        let mut prow = rows.swap_remove(pr);
        let inv = prow[&pc].recip();
        for v in prow.values_mut() {
            *v = &*v * &inv;
        }
        for r in rows.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
            if let Some(f) = r.get(&pc).cloned() {
                for (c, v) in &prow {
                    let e = r.entry(*c).or_insert_with(Rational::zero);
                    *e = &*e - &(&f * v);
                    if e.is_zero() {
                        r.remove(c);
                    }
                }
            }
        }
        rows.retain(|r| !r.is_empty());
        pivots.push((pc, prow));
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (pc, row) in &pivots {
            if let Some(f) = row.get(&free) {
                v[*pc] = -f;
            }
        }
        out.push(normalize_rational(v));
    }
    out
}

fn normalize_rational(mut v: Vec<Rational>) -> Vec<Rational> {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::one();
    let mut num = num_bigint::BigInt::zero();
    for x in &v {
        den = den.lcm(x.denom());
        num = num.gcd(x.numer());
    }
    if num.is_zero() {
        return v;
    }
    let scale = Rational::new(den, num);
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x * &scale;
        if neg {
            *x = -&*x;
        }
    }
    v
}

/// Row and column of the entry minimising `(cost, column, row)`.
fn pick_pivot<T>(rows: &[Row<T>], cost: impl Fn(&T) -> usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize, usize), (usize, usize))> = None;
    for (ri, r) in rows.iter().enumerate() {
        for (&c, v) in r {
            let key = (cost(v), c, ri);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, (ri, c)));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Result of a symbolic nullspace computation.
#[derive(Clone, Debug)]
pub struct SymbolicNullspace {
    pub basis: Vec<Vec<RatFunc>>,
    /// Non-constant pivots assumed nonzero.
    pub assumptions: Vec<ParamPoly>,
}

/// Nullspace over the rational-function field.
///
/// Rows are first cleared to polynomial entries. Elimination is fraction
/// free: `row <- p * row - e * pivot_row`, after which the row is divided by
/// its rational content and by any earlier non-constant pivot that divides
/// every entry. Pivots are chosen by fewest parameter terms, then column.
pub fn nullspace_symbolic(rows: &[Row<RatFunc>], ncols: usize) -> SymbolicNullspace {
    let mut work: Vec<Row<ParamPoly>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let vals: Vec<RatFunc> = r.values().cloned().collect();
            let (_, nums) = clear_denominators(&vals);
            primitive_row(r.keys().copied().zip(nums).collect())
        })
        .collect();
    let mut pivots: Vec<(usize, Row<ParamPoly>)> = Vec::new();
    let mut assumptions: Vec<ParamPoly> = Vec::new();
    while let Some((pr, pc)) = pick_pivot(&work, |p: &ParamPoly| p.num_terms() * 4 + p.total_degree() as usize) {
        let prow = work.swap_remove(pr);
        let p = prow[&pc].clone();
        if !p.is_constant() {
            let prim = p.primitive().1;
            if !assumptions.contains(&prim) {
                assumptions.push(prim);
            }
        }
        let divisors: Vec<ParamPoly> = assumptions.clone();
        for r in work.iter_mut() {
            let Some(e) = r.get(&pc).cloned() else { continue };
            let mut next: Row<ParamPoly> = BTreeMap::new();
            for (c, v) in r.iter() {
                next.insert(*c, v * &p);
            }
            for (c, v) in &prow {
                let t = next.entry(*c).or_default();
                *t = &*t - &(&e * v);
                if t.is_zero() {
                    next.remove(c);
                }
            }
            let mut next = primitive_row(next);
            for d in &divisors {
                while !next.is_empty() {
                    let q: Option<Row<ParamPoly>> = next
                        .iter()
                        .map(|(c, v)| v.exact_div(d).map(|q| (*c, q)))
                        .collect();
                    match q {
                        Some(q) => next = q,
                        None => break,
                    }
                }
            }
            *r = next;
        }
        work.retain(|r| !r.is_empty());
        pivots.push((pc, prow));
    }

    // Back substitution in the field, latest pivot first.
    let pivot_cols: Vec<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![RatFunc::zero(); ncols];
        v[free] = RatFunc::one();
        for (pc, row) in pivots.iter().rev() {
            let mut acc = RatFunc::zero();
            for (c, a) in row {
                if c != pc && !v[*c].is_zero() {
                    acc = &acc + &(&RatFunc::from_poly(a.clone()) * &v[*c]);
                }
            }
            if !acc.is_zero() {
                v[*pc] = -&(&acc / &RatFunc::from_poly(row[pc].clone()));
            }
        }
        basis.push(normalize_symbolic(v));
    }
    SymbolicNullspace { basis, assumptions }
}

fn primitive_row(r: Row<ParamPoly>) -> Row<ParamPoly> {
    let mut cont: Option<Rational> = None;
    for v in r.values() {
        let c = v.content();
        cont = Some(match cont {
            None => c,
            Some(a) => rational_gcd(&a, &c),
        });
    }
    match cont {
        Some(c) if !c.is_one() && !c.is_zero() => {
            let inv = c.recip();
            r.into_iter().map(|(k, v)| (k, v.scale(&inv))).collect()
        }
        _ => r,
    }
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num_integer::Integer;
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Clears denominators, then scales so the first nonzero coordinate has
/// rational content 1 and a positive leading coefficient.
pub fn normalize_symbolic(v: Vec<RatFunc>) -> Vec<RatFunc> {
    let (_, nums) = clear_denominators(&v);
    let Some(first) = nums.iter().find(|p| !p.is_zero()) else {
        return v;
    };
    let (unit, _) = first.primitive();
    let inv = unit.recip();
    let mut out: Vec<RatFunc> = nums.iter().map(|p| RatFunc::from_poly(p.scale(&inv))).collect();
    // Divide out the first coordinate when it divides every coordinate.
    let first = out.iter().find(|p| !p.is_zero()).unwrap().numer().clone();
    if !first.is_constant() {
        let all: Option<Vec<ParamPoly>> = out
            .iter()
            .map(|x| if x.is_zero() { Some(ParamPoly::zero()) } else { x.numer().exact_div(&first) })
            .collect();
        if let Some(q) = all {
            out = q.into_iter().map(RatFunc::from_poly).collect();
        }
    }
    out
}
