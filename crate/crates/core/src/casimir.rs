//! Casimir elements: candidate construction, the linear system from
//! `[K, x] = 0`, its nullspace, and verification of given elements.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coeff::{Assignment, Coeff, ParamPoly, RatFunc, Rational, Sym};
use crate::error::{Error, Result};
use crate::freealg::{ordered_words, word_compare, NCPoly, Word};
use crate::linalg::{nullspace_rational, nullspace_symbolic, Row};
use crate::relations::{Reducer, RelationSet, Strategy};

/// Which words enter a degree-`n` candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegreeFilter {
    /// Polynomial length `1..=n`.
    #[default]
    Polynomial,
    /// Graded degree `1..=n`.
    Graded,
}

/// The unknowns of a degree-`n` candidate, in ascending word order.
pub fn candidate_words(r: &RelationSet, n: usize, filter: DegreeFilter) -> Vec<Word> {
    let mut ws: Vec<Word> = match filter {
        DegreeFilter::Polynomial => ordered_words(r.n(), 1, n),
        DegreeFilter::Graded => {
            let min = r.degrees().values().iter().copied().min().unwrap_or(1).max(1) as usize;
            ordered_words(r.n(), 1, n / min)
                .into_iter()
                .filter(|w| r.degrees().word_degree(w) as usize <= n)
                .collect()
        }
    };
    ws.sort_by(|a, b| word_compare(a, b, r.degrees()));
    ws
}

/// The homogeneous system: row `(x, u)` holds the coefficient of `u` in
/// `NF([w, x])` for every candidate word `w` (column).
#[derive(Clone, Debug)]
pub struct LinearSystem<C: Coeff> {
    pub columns: Vec<Word>,
    pub rows: Vec<((usize, Word), Row<C>)>,
}

pub fn casimir_system<C: Coeff>(red: &Reducer<C>, r: &RelationSet, columns: Vec<Word>) -> Result<LinearSystem<C>> {
    let n = r.n();
    let jobs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..columns.len()).map(move |c| (x, c))).collect();
    let brackets: Vec<((usize, usize), NCPoly<C>)> = jobs
        .into_par_iter()
        .map(|(x, c)| {
            let w = NCPoly::monomial(columns[c].clone(), C::one());
            let comm = w.commutator(&NCPoly::gen(x));
            red.reduce(&comm, Strategy::Leftmost).map(|p| ((x, c), p))
        })
        .collect::<Result<_>>()?;
    let mut rows: BTreeMap<(usize, Word), Row<C>> = BTreeMap::new();
    for ((x, c), p) in brackets {
        for (u, k) in p.terms() {
            rows.entry((x, u.clone())).or_default().insert(c, k.clone());
        }
    }
    Ok(LinearSystem {
        columns,
        rows: rows.into_iter().filter(|(_, r)| !r.is_empty()).collect(),
    })
}

/// A basis of Casimir elements of bounded degree, constants excluded.
#[derive(Clone, Debug)]
pub struct CasimirBasis {
    pub degree: usize,
    pub elements: Vec<NCPoly>,
    pub assumptions: Vec<ParamPoly>,
}

impl CasimirBasis {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

fn assemble(columns: &[Word], v: Vec<RatFunc>) -> NCPoly {
    NCPoly::from_terms(columns.iter().cloned().zip(v))
}

/// Solves for all Casimirs with unknowns indexed by `candidate_words`. Uses
/// rational arithmetic when the relations carry no parameters.
pub fn casimirs(r: &RelationSet, n: usize, filter: DegreeFilter) -> Result<CasimirBasis> {
    let columns = candidate_words(r, n, filter);
    if r.used_params().is_empty() {
        let red: Reducer<Rational> = Reducer::new(r)?;
        let sys = casimir_system(&red, r, columns.clone())?;
        let rows: Vec<Row<Rational>> = sys.rows.into_iter().map(|(_, r)| r).collect();
        let ns = nullspace_rational(&rows, columns.len());
        return Ok(CasimirBasis {
            degree: n,
            elements: ns
                .into_iter()
                .map(|v| assemble(&columns, v.into_iter().map(RatFunc::from_rational).collect()))
                .collect(),
            assumptions: r.assumptions(),
        });
    }
    let red = Reducer::symbolic(r);
    let sys = casimir_system(&red, r, columns.clone())?;
    let rows: Vec<Row<RatFunc>> = sys.rows.into_iter().map(|(_, r)| r).collect();
    let ns = nullspace_symbolic(&rows, columns.len());
    let mut assumptions = r.assumptions();
    for a in ns.assumptions {
        if !assumptions.contains(&a) {
            assumptions.push(a);
        }
    }
    assumptions.sort();
    Ok(CasimirBasis {
        degree: n,
        elements: ns.basis.into_iter().map(|v| assemble(&columns, v)).collect(),
        assumptions,
    })
}

/// Casimirs after substituting a full parameter assignment.
pub fn casimirs_at(r: &RelationSet, n: usize, assignment: &Assignment) -> Result<CasimirBasis> {
    casimirs(&r.specialize(assignment)?, n, DegreeFilter::Polynomial)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CasimirVerdict {
    Casimir,
    Residual { generator: usize, residual: NCPoly },
}

/// Checks `NF([K, x]) = 0` for every generator `x`.
pub fn verify_casimir(k: &NCPoly, r: &RelationSet) -> Result<CasimirVerdict> {
    let red = Reducer::symbolic(r);
    for x in 0..r.n() {
        let res = red.reduce(&k.commutator(&NCPoly::gen(x)), Strategy::Leftmost)?;
        if !res.is_zero() {
            return Ok(CasimirVerdict::Residual { generator: x, residual: res });
        }
    }
    Ok(CasimirVerdict::Casimir)
}

/// Fixes the unknown coefficient symbols of an otherwise given element `k`
/// so that it becomes central. `k` must be affine in `unknowns`. Returns the
/// solved element with the values substituted, and the values.
pub fn solve_unknown_coefficients(
    k: &NCPoly,
    r: &RelationSet,
    unknowns: &[Sym],
) -> Result<(NCPoly, BTreeMap<Sym, RatFunc>)> {
    let red = Reducer::symbolic(r);
    let mut equations: BTreeMap<(usize, Word), RatFunc> = BTreeMap::new();
    for x in 0..r.n() {
        let res = red.reduce(&k.commutator(&NCPoly::gen(x)), Strategy::Leftmost)?;
        for (u, c) in res.terms() {
            equations.insert((x, u.clone()), c.clone());
        }
    }
    // Column m < unknowns.len() holds d/d(unknown m); the last column holds the
    // constant part.
    let zero_all: std::collections::HashMap<Sym, RatFunc> = unknowns.iter().map(|&s| (s, RatFunc::zero())).collect();
    let mut rows: Vec<Row<RatFunc>> = Vec::new();
    for c in equations.values() {
        let base = c.compose(&zero_all)?;
        let mut row = Row::new();
        for (m, &s) in unknowns.iter().enumerate() {
            let mut at = zero_all.clone();
            at.insert(s, RatFunc::one());
            let slope = &c.compose(&at)? - &base;
            if !slope.is_zero() {
                row.insert(m, slope);
            }
        }
        if !base.is_zero() {
            row.insert(unknowns.len(), base);
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    let ns = nullspace_symbolic(&rows, unknowns.len() + 1);
    let sol = ns
        .basis
        .iter()
        .find(|v| !v[unknowns.len()].is_zero())
        .ok_or_else(|| Error::Other("no value of the unknown coefficients makes the element central".into()))?;
    if ns.basis.len() > 1 {
        return Err(Error::Other("the unknown coefficients are not determined uniquely".into()));
    }
    let scale = sol[unknowns.len()].clone();
    let values: BTreeMap<Sym, RatFunc> = unknowns
        .iter()
        .enumerate()
        .map(|(m, &s)| (s, &sol[m] / &scale))
        .collect();
    let images: std::collections::HashMap<Sym, RatFunc> = values.iter().map(|(s, v)| (*s, v.clone())).collect();
    let solved = k.try_map_coeffs(|c| c.compose(&images))?;
    Ok((solved, values))
}

/// `a = c * b` for some nonzero scalar `c`.
pub fn proportional(a: &NCPoly, b: &NCPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (w, ca) = a.terms().next().unwrap();
    let cb = b.coefficient(w);
    if cb.is_zero() {
        return false;
    }
    let ratio = &ca.clone() / &cb;
    a.sub(&b.scale(&ratio)).is_zero()
}
