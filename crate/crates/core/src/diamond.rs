//! Overlap ambiguities and the PBW constraint polynomials they generate.

use rayon::prelude::*;

use crate::coeff::{clear_denominators, Assignment, Coeff, ParamPoly, RatFunc, Rational};
use crate::error::Result;
use crate::freealg::{word_compare, NCPoly, Word};
use crate::relations::{Reducer, RelationSet, Strategy};

/// The overlap `x_k x_j x_i` with `k > j > i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ambiguity {
    pub k: usize,
    pub j: usize,
    pub i: usize,
}

impl Ambiguity {
    pub fn word(&self) -> Word {
        Word::from_indices(&[self.k, self.j, self.i])
    }
}

/// All decreasing generator triples, largest first (`DCB, DCA, DBA, CBA`).
pub fn ambiguities(r: &RelationSet) -> Vec<Ambiguity> {
    let n = r.n();
    let mut out = Vec::new();
    for k in (0..n).rev() {
        for j in (0..k).rev() {
            for i in (0..j).rev() {
                out.push(Ambiguity { k, j, i });
            }
        }
    }
    out
}

/// `NF(r_kj x_i) - NF(x_k r_ji)`: the left-first minus the right-first
/// resolution of the overlap, both completed with the leftmost strategy.
pub fn overlap_difference<C: Coeff>(red: &Reducer<C>, r: &RelationSet, a: Ambiguity) -> Result<NCPoly<C>> {
    let conv = |p: &NCPoly| p.map_coeffs(|c| C::from_ratfunc(c).expect("reducer accepted these coefficients"));
    let kj = conv(&r.rule(a.k, a.j).expect("complete presentation").rhs);
    let ji = conv(&r.rule(a.j, a.i).expect("complete presentation").rhs);
    let left = kj.mul(&NCPoly::gen(a.i));
    let right = NCPoly::gen(a.k).mul(&ji);
    let l = red.reduce(&left, Strategy::Leftmost)?;
    let rr = red.reduce(&right, Strategy::Leftmost)?;
    Ok(l.sub(&rr))
}

/// Nonzero constraint rows of one ambiguity.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbiguityRows {
    pub ambiguity: Ambiguity,
    /// Ascending word order; each polynomial is the row's numerator after its
    /// denominator was cleared.
    pub rows: Vec<(Word, ParamPoly)>,
    /// Distinct denominator factors cleared from the rows.
    pub denominators: Vec<ParamPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSet {
    pub parts: Vec<AmbiguityRows>,
    /// Parameter expressions assumed nonzero.
    pub assumptions: Vec<ParamPoly>,
}

impl ConstraintSet {
    pub fn rows(&self) -> impl Iterator<Item = (Ambiguity, &Word, &ParamPoly)> {
        self.parts
            .iter()
            .flat_map(|p| p.rows.iter().map(move |(w, f)| (p.ambiguity, w, f)))
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| p.rows.is_empty())
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(|p| p.rows.len()).sum()
    }

    /// The row for `word` of the single ambiguity of a three-generator set.
    pub fn row(&self, word: &Word) -> Option<&ParamPoly> {
        self.rows().find(|(_, w, _)| *w == word).map(|(_, _, f)| f)
    }

    /// `word: polynomial` lines, prefixed by the ambiguity when there are
    /// several.
    pub fn render(&self, r: &RelationSet) -> Vec<String> {
        let many = self.parts.len() > 1;
        self.rows()
            .map(|(a, w, f)| {
                let key = w.render(r.generators());
                if many {
                    format!("{} {key}: {f}", r.word_name(&a.word()))
                } else {
                    format!("{key}: {f}")
                }
            })
            .collect()
    }
}

fn collect_rows(r: &RelationSet, a: Ambiguity, diff: NCPoly) -> AmbiguityRows {
    let mut terms: Vec<(Word, RatFunc)> = diff.into_terms().collect();
    terms.sort_by(|x, y| word_compare(&x.0, &y.0, r.degrees()));
    let mut denominators = Vec::new();
    let rows = terms
        .into_iter()
        .map(|(w, c)| {
            for (d, _) in c.denom_factors() {
                if !denominators.contains(d) {
                    denominators.push(d.clone());
                }
            }
            let (_, nums) = clear_denominators(std::slice::from_ref(&c));
            (w, nums.into_iter().next().unwrap())
        })
        .collect();
    denominators.sort();
    AmbiguityRows {
        ambiguity: a,
        rows,
        denominators,
    }
}

/// Generates the constraint rows of every ambiguity. Ambiguities are resolved
/// in parallel and merged in [`ambiguities`] order.
pub fn pbw_constraints(r: &RelationSet) -> Result<ConstraintSet> {
    let numeric = r.used_params().is_empty();
    let parts: Result<Vec<AmbiguityRows>> = if numeric {
        let red: Reducer<Rational> = Reducer::new(r)?;
        ambiguities(r)
            .into_par_iter()
            .map(|a| Ok(collect_rows(r, a, overlap_difference(&red, r, a)?.to_symbolic())))
            .collect()
    } else {
        let red = Reducer::symbolic(r);
        ambiguities(r)
            .into_par_iter()
            .map(|a| Ok(collect_rows(r, a, overlap_difference(&red, r, a)?)))
            .collect()
    };
    let parts = parts?;
    let mut assumptions = r.assumptions();
    for p in &parts {
        for d in &p.denominators {
            if !assumptions.contains(d) {
                assumptions.push(d.clone());
            }
        }
    }
    assumptions.sort();
    Ok(ConstraintSet { parts, assumptions })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pbw {
        assumptions: Vec<ParamPoly>,
    },
    NotPbw {
        ambiguity: Ambiguity,
        word: Word,
        value: ParamPoly,
    },
    Undetermined {
        assumptions: Vec<ParamPoly>,
        rows: Vec<(Ambiguity, Word, ParamPoly)>,
    },
}

impl Verdict {
    pub fn is_pbw(&self) -> bool {
        matches!(self, Verdict::Pbw { .. })
    }
}

/// Substitutes `assignment` into the relations and decides PBW-ness. Fails
/// when a relation coefficient's denominator vanishes at the assignment.
pub fn is_pbw(r: &RelationSet, assignment: &Assignment) -> Result<Verdict> {
    let spec = r.specialize(assignment)?;
    let cs = pbw_constraints(&spec)?;
    let mut open = Vec::new();
    for (a, w, f) in cs.rows() {
        if f.is_constant() {
            return Ok(Verdict::NotPbw {
                ambiguity: a,
                word: w.clone(),
                value: f.clone(),
            });
        }
        open.push((a, w.clone(), f.clone()));
    }
    if open.is_empty() {
        Ok(Verdict::Pbw {
            assumptions: cs.assumptions,
        })
    } else {
        Ok(Verdict::Undetermined {
            assumptions: cs.assumptions,
            rows: open,
        })
    }
}
