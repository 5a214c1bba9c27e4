//! Lower-triangular, degree-preserving changes of generators and the
//! canonical forms of the lowest bracket of a quadratic three-generator
//! algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::{ParamPoly, RatFunc};
use crate::error::{Error, Result};
use crate::freealg::{word_compare, NCPoly, Word};
use crate::relations::{Mode, Reducer, RelationSet, Strategy};
use crate::syntax::{parse_expr_at, Scope};

/// `x'_i = sum_j m[i][j] x_j` with `m` lower triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformation {
    m: Vec<Vec<RatFunc>>,
}

impl Transformation {
    pub fn identity(n: usize) -> Transformation {
        let m = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect())
            .collect();
        Transformation { m }
    }

    /// Checks shape: square, nothing above the diagonal, nonzero diagonal.
    pub fn new(m: Vec<Vec<RatFunc>>) -> Result<Transformation> {
        let n = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotDegreePreserving("matrix is not square".into()));
            }
            for (j, e) in row.iter().enumerate().skip(i + 1) {
                if !e.is_zero() {
                    return Err(Error::NotDegreePreserving(format!("entry ({i},{j}) = {e} lies above the diagonal")));
                }
            }
            if row[i].is_zero() {
                return Err(Error::SingularTransformation(format!("generator {i}")));
            }
        }
        Ok(Transformation { m })
    }

    /// The three-generator form `A' = a1 A`, `B' = b1 B + b2 A`,
    /// `C' = g1 C + g2 B + g3 A`.
    pub fn triangular3(a1: RatFunc, b1: RatFunc, b2: RatFunc, g1: RatFunc, g2: RatFunc, g3: RatFunc) -> Result<Transformation> {
        let z = RatFunc::zero;
        Transformation::new(vec![vec![a1, z(), z()], vec![b2, b1, z()], vec![g3, g2, g1]])
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.m[i][j]
    }

    pub fn matrix(&self) -> &[Vec<RatFunc>] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        *self == Transformation::identity(self.n())
    }

    /// `x'_i` as a linear polynomial in the old generators.
    pub fn image(&self, i: usize) -> NCPoly {
        NCPoly::from_terms(
            self.m[i]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (Word::gen(j), c.clone())),
        )
    }

    pub fn invert(&self) -> Result<Transformation> {
        let n = self.n();
        let mut inv = vec![vec![RatFunc::zero(); n]; n];
        for i in 0..n {
            if self.m[i][i].is_zero() {
                return Err(Error::SingularTransformation(format!("generator {i}")));
            }
            let d = self.m[i][i].inv()?;
            inv[i][i] = d.clone();
            // row i of the inverse: -(1/m_ii) sum_{k<i} m_ik inv_k
            for j in 0..i {
                let mut acc = RatFunc::zero();
                for k in j..i {
                    if !self.m[i][k].is_zero() && !inv[k][j].is_zero() {
                        acc = &acc + &(&self.m[i][k] * &inv[k][j]);
                    }
                }
                inv[i][j] = -&(&acc * &d);
            }
        }
        Ok(Transformation { m: inv })
    }

    /// `self` after `first`: `x'' = self(first(x))`.
    pub fn compose(&self, first: &Transformation) -> Transformation {
        let n = self.n();
        let mut m = vec![vec![RatFunc::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate().take(i + 1) {
                for k in j..=i {
                    if !self.m[i][k].is_zero() && !first.m[k][j].is_zero() {
                        *e = &*e + &(&self.m[i][k] * &first.m[k][j]);
                    }
                }
            }
        }
        Transformation { m }
    }

    /// Checks degree preservation against a degree map: `m[i][j] != 0` needs
    /// `d(x_j) <= d(x_i)`.
    pub fn check_degrees(&self, r: &RelationSet) -> Result<()> {
        if self.n() != r.n() {
            return Err(Error::NotDegreePreserving("size differs from the generator count".into()));
        }
        let d = r.degrees();
        for i in 0..self.n() {
            for j in 0..i {
                if !self.m[i][j].is_zero() && d.of(j) > d.of(i) {
                    return Err(Error::NotDegreePreserving(format!(
                        "{} has larger degree than {}",
                        r.generators()[j],
                        r.generators()[i]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `X' = ...` lines, one per generator, rendered in old generators.
    pub fn render(&self, r: &RelationSet) -> Vec<String> {
        (0..self.n())
            .map(|i| format!("{}' = {}", r.generators()[i], r.render(&self.image(i))))
            .collect()
    }
}

/// Rewrites `f`, given in old ordered words, as a polynomial in the new
/// generators. Each new ordered word maps to a leading multiple of the same
/// old word plus smaller terms, so elimination from the top terminates.
fn express_in_new(t: &Transformation, red: &Reducer<RatFunc>, f: &NCPoly) -> Result<NCPoly> {
    let degrees = red.degrees().clone();
    let mut target = f.clone();
    let mut out = NCPoly::zero();
    let mut cache: BTreeMap<Word, NCPoly> = BTreeMap::new();
    while !target.is_zero() {
        let (w, c) = target
            .terms()
            .max_by(|a, b| word_compare(a.0, b.0, &degrees))
            .map(|(w, c)| (w.clone(), c.clone()))
            .unwrap();
        if !w.is_ordered() {
            return Err(Error::Other(format!("expected a normal form, found {w:?}")));
        }
        let img = match cache.get(&w) {
            Some(p) => p.clone(),
            None => {
                let mut p = NCPoly::one();
                for &g in w.letters() {
                    p = p.mul(&t.image(g as usize));
                }
                let p = red.reduce(&p, Strategy::Leftmost)?;
                cache.insert(w.clone(), p.clone());
                p
            }
        };
        let lead = img.coefficient(&w);
        let k = c.div_checked(&lead)?;
        out.add_term(w, k.clone());
        target = target.sub(&img.scale(&k));
    }
    Ok(out)
}

/// The relations in the primed basis: every bracket `[x'_j, x'_i]` is
/// reduced with `r` and re-expressed in ordered primed words.
pub fn apply(t: &Transformation, r: &RelationSet) -> Result<RelationSet> {
    t.check_degrees(r)?;
    let red = Reducer::symbolic(r);
    let n = r.n();
    let mut brackets = BTreeMap::new();
    for j in 0..n {
        for i in 0..j {
            let comm = t.image(j).commutator(&t.image(i));
            let nf = red.reduce(&comm, Strategy::Leftmost)?;
            let p = express_in_new(t, &red, &nf)?;
            if !p.is_zero() {
                brackets.insert((j, i), p);
            }
        }
    }
    let out = RelationSet::from_brackets(
        r.generators().to_vec(),
        r.params().to_vec(),
        r.degrees().clone(),
        brackets,
        r.mode(),
    )?;
    if matches!(out.mode(), Mode::Strict) {
        if let Some(d) = out.validate().into_iter().next() {
            return Err(Error::InvalidRelations(d.message));
        }
    }
    Ok(out)
}

/// The image of an element of the algebra in the primed basis.
pub fn transport(t: &Transformation, r: &RelationSet, f: &NCPoly) -> Result<NCPoly> {
    let red = Reducer::symbolic(r);
    let nf = red.reduce(f, Strategy::Leftmost)?;
    express_in_new(t, &red, &nf)
}

/// Parses `A' = 2*A` style lines (the prime is optional). Generators
/// without a line map to themselves.
pub fn parse_transformation(text: &str, r: &RelationSet) -> Result<Transformation> {
    let n = r.n();
    let mut m = Transformation::identity(n).m;
    let mut seen = vec![false; n];
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let perr = |col: usize, msg: String| Error::Parse { line: ln + 1, col, msg };
        let Some(eq) = line.find('=') else {
            return Err(perr(1, "expected `X' = expression`".into()));
        };
        let name = line[..eq].trim().trim_end_matches('\'');
        let Some(i) = r.generator_index(name) else {
            return Err(perr(1, format!("unknown generator {name}")));
        };
        if seen[i] {
            return Err(perr(1, format!("duplicate line for {name}")));
        }
        seen[i] = true;
        let scope = Scope {
            generators: r.generators(),
            params: r.params(),
            brackets: false,
        };
        let p = parse_expr_at(&line[eq + 1..], ln + 1, eq + 2, &scope)?;
        let mut row = vec![RatFunc::zero(); n];
        for (w, c) in p.terms() {
            if w.len() != 1 {
                return Err(perr(eq + 2, "transformation must be linear in the generators".into()));
            }
            row[w.letters()[0] as usize] = c.clone();
        }
        m[i] = row;
    }
    let t = Transformation::new(m)?;
    t.check_degrees(r)?;
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormKind {
    F1a,
    F1b,
    F1c,
    F1d,
    F2a,
    F2b,
    F2c,
    F2d,
    F2e,
    F2f,
    F2g,
    F2h,
}

impl FormKind {
    /// Priority order.
    pub const ALL: [FormKind; 12] = [
        FormKind::F1a,
        FormKind::F1b,
        FormKind::F1c,
        FormKind::F1d,
        FormKind::F2a,
        FormKind::F2b,
        FormKind::F2c,
        FormKind::F2d,
        FormKind::F2e,
        FormKind::F2f,
        FormKind::F2g,
        FormKind::F2h,
    ];

    /// Which of `A^2, A, B, C` carry coefficient 1 besides the skew term.
    pub fn pattern(self) -> Pattern {
        use FormKind::*;
        let (a2, a, b, c) = match self {
            F1a => (false, false, false, true),
            F1b => (true, false, false, true),
            F1c => (false, false, true, true),
            F1d => (true, false, true, true),
            F2a => (false, false, true, false),
            F2b | F2g => (true, false, true, false),
            F2c => (false, true, false, false),
            F2d => (false, true, true, false),
            F2e => (true, true, false, false),
            F2f => (false, false, false, false),
            F2h => (true, false, false, false),
        };
        Pattern { a2, a, b, c }
    }

    /// Type 1 forms keep `C` in `[B,A]`.
    pub fn type_number(self) -> u8 {
        if self.pattern().c {
            1
        } else {
            2
        }
    }

    fn from_pattern(p: Pattern) -> Option<FormKind> {
        FormKind::ALL.into_iter().find(|k| k.pattern() == p)
    }

    pub fn name(self) -> &'static str {
        use FormKind::*;
        match self {
            F1a => "1a",
            F1b => "1b",
            F1c => "1c",
            F1d => "1d",
            F2a => "2a",
            F2b => "2b",
            F2c => "2c",
            F2d => "2d",
            F2e => "2e",
            F2f => "2f",
            F2g => "2g",
            F2h => "2h",
        }
    }

    /// 2b and 2g are printed with the same shape.
    pub fn aliases(self) -> &'static [FormKind] {
        match self {
            FormKind::F2b => &[FormKind::F2g],
            FormKind::F2g => &[FormKind::F2b],
            _ => &[],
        }
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub a2: bool,
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormLabel {
    pub kind: FormKind,
    /// Coefficient of `AB` in the canonical `[B,A]`.
    pub lambda: RatFunc,
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (lambda = {})", self.kind, self.lambda)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub label: FormLabel,
    pub transformation: Transformation,
    /// The relations in the canonical basis.
    pub canonical: RelationSet,
    /// Every canonical form reachable from the input, in priority order.
    pub reachable: Vec<FormKind>,
    /// Parameter expressions assumed nonzero by the case analysis.
    pub assumptions: Vec<ParamPoly>,
}

impl Classification {
    /// More than one form was reachable and priority picked one.
    pub fn tie_broken(&self) -> bool {
        self.reachable.len() > 1
    }
}

/// The `[B,A]` coefficients `(a200, a110, a100, a010, a001)`.
struct Lowest {
    a200: RatFunc,
    a110: RatFunc,
    a100: RatFunc,
    a010: RatFunc,
    a001: RatFunc,
}

fn lowest_bracket(r: &RelationSet) -> Result<Lowest> {
    if r.n() != 3 {
        return Err(Error::ClassificationShape);
    }
    for rel in r.rules() {
        if rel.rhs.words().any(|w| w.len() > 2) {
            return Err(Error::ClassificationShape);
        }
    }
    let ba = r.brackets().remove(&(1, 0)).unwrap_or_else(NCPoly::zero);
    let w = |ix: &[usize]| Word::from_indices(ix);
    let allowed = [w(&[0, 0]), w(&[0, 1]), w(&[0]), w(&[1]), w(&[2]), Word::unit()];
    if ba.words().any(|x| !allowed.contains(x)) {
        return Err(Error::ClassificationShape);
    }
    Ok(Lowest {
        a200: ba.coefficient(&w(&[0, 0])),
        a110: ba.coefficient(&w(&[0, 1])),
        a100: ba.coefficient(&w(&[0])),
        a010: ba.coefficient(&w(&[1])),
        a001: ba.coefficient(&w(&[2])),
    })
}

/// The canonical shape of `[B,A]`, if it already is one.
fn canonical_kind(l: &Lowest) -> Option<FormKind> {
    let bit = |c: &RatFunc| {
        if c.is_zero() {
            Some(false)
        } else if c.is_one() {
            Some(true)
        } else {
            None
        }
    };
    let p = Pattern {
        a2: bit(&l.a200)?,
        a: bit(&l.a100)?,
        b: bit(&l.a010)?,
        c: bit(&l.a001)?,
    };
    FormKind::from_pattern(p)
}

struct Assume(Vec<ParamPoly>);

impl Assume {
    /// Symbolic nonzero test; a non-constant value is recorded.
    fn nonzero(&mut self, c: &RatFunc) -> bool {
        if c.is_zero() {
            return false;
        }
        if !c.is_constant() {
            let p = c.numer().primitive().1;
            if !self.0.contains(&p) {
                self.0.push(p);
            }
        }
        true
    }
}

/// Picks a canonical form for `[B,A]` and the transformation reaching it.
/// An algebra already in canonical form keeps its label with the identity.
pub fn classify_ab_form(r: &RelationSet) -> Result<Classification> {
    let l = lowest_bracket(r)?;
    let one = RatFunc::one;
    let zero = RatFunc::zero;
    let mut asm = Assume(Vec::new());
    let mut reachable: Vec<FormKind> = Vec::new();
    let a110_nz = asm.nonzero(&l.a110);

    let (kind, t) = if asm.nonzero(&l.a001) {
        // Type 1. C' and B' are fixed through gamma_1, gamma_2, A' through
        // gamma_3; the A'^2 coefficient is (b1 a200 - a110 b2)/a1.
        let a2_opts: Vec<bool> = if a110_nz {
            vec![false, true]
        } else if asm.nonzero(&l.a200) {
            vec![true]
        } else {
            vec![false]
        };
        for &b in &[false, true] {
            for &a2 in &a2_opts {
                reachable.push(FormKind::from_pattern(Pattern { a2, a: false, b, c: true }).unwrap());
            }
        }
        let a2 = a2_opts[0];
        let q = if a2 { one() } else { zero() };
        let (a1, b1, b2) = if a110_nz {
            (one(), one(), (&l.a200 - &q).div_checked(&l.a110)?)
        } else if a2 {
            (l.a200.clone(), one(), zero())
        } else {
            (one(), one(), zero())
        };
        let g1 = &(&a1 * &b1) * &l.a001;
        // B' coefficient a1 (a010 - a001 g2/g1) = 0
        let g2 = (&l.a010 * &g1).div_checked(&l.a001)?;
        // A' coefficient b1 a100 - a010 b2 + a001 b2 g2/g1 - a001 b1 g3/g1 = 0
        let num = &(&(&b1 * &l.a100) - &(&l.a010 * &b2)) + &(&(&l.a001 * &b2) * &g2.div_checked(&g1)?);
        let g3 = (&num * &g1).div_checked(&(&l.a001 * &b1))?;
        let kind = if a2 { FormKind::F1b } else { FormKind::F1a };
        (kind, Transformation::triangular3(a1, b1, b2, g1, g2, g3)?)
    } else {
        // Type 2: B' = a1 a010, A' = b1 a100 - a010 b2,
        // A'^2 = (b1 a200 - a110 b2)/a1.
        let g = (one(), zero(), zero());
        let mk = |a1: RatFunc, b1: RatFunc, b2: RatFunc| Transformation::triangular3(a1, b1, b2, g.0.clone(), g.1.clone(), g.2.clone());
        if asm.nonzero(&l.a010) {
            let a1 = l.a010.inv()?;
            let d = &(&l.a010 * &l.a200) - &(&l.a100 * &l.a110);
            if asm.nonzero(&d) {
                // (A', A'^2) reaches any target with b1 = (q - a110 p)/d != 0
                reachable.push(FormKind::F2b);
                if a110_nz {
                    reachable.push(FormKind::F2d);
                }
                let b1 = d.inv()?;
                let b2 = (&l.a100 * &b1).div_checked(&l.a010)?;
                (FormKind::F2b, mk(a1, b1, b2)?)
            } else {
                // A'^2 = a110 A'
                reachable.push(FormKind::F2a);
                if !a110_nz {
                    reachable.push(FormKind::F2d);
                }
                let b2 = l.a100.div_checked(&l.a010)?;
                (FormKind::F2a, mk(a1, one(), b2)?)
            }
        } else if asm.nonzero(&l.a100) {
            let b1 = l.a100.inv()?;
            if a110_nz {
                reachable.extend([FormKind::F2c, FormKind::F2e]);
                let b2 = (&b1 * &l.a200).div_checked(&l.a110)?;
                (FormKind::F2c, mk(one(), b1, b2)?)
            } else if asm.nonzero(&l.a200) {
                reachable.push(FormKind::F2e);
                (FormKind::F2e, mk(&b1 * &l.a200, b1, zero())?)
            } else {
                reachable.push(FormKind::F2c);
                (FormKind::F2c, mk(one(), b1, zero())?)
            }
        } else if a110_nz {
            reachable.extend([FormKind::F2f, FormKind::F2h]);
            let b2 = l.a200.div_checked(&l.a110)?;
            (FormKind::F2f, mk(one(), one(), b2)?)
        } else if asm.nonzero(&l.a200) {
            reachable.push(FormKind::F2h);
            (FormKind::F2h, mk(l.a200.clone(), one(), zero())?)
        } else {
            reachable.push(FormKind::F2f);
            (FormKind::F2f, Transformation::identity(3))
        }
    };

    let (kind, t) = match canonical_kind(&l) {
        Some(k) => {
            if !reachable.contains(&k) {
                reachable.push(k);
                reachable.sort();
            }
            (k, Transformation::identity(3))
        }
        None => (kind, t),
    };
    let canonical = apply(&t, r)?;
    let got = lowest_bracket(&canonical)?;
    if canonical_kind(&got).is_none_or(|k| k.pattern() != kind.pattern()) {
        return Err(Error::Other(format!("classification did not reach form {kind}")));
    }
    asm.0.sort();
    Ok(Classification {
        label: FormLabel { kind, lambda: got.a110 },
        transformation: t,
        canonical,
        reachable,
        assumptions: asm.0,
    })
}
