//! Defining relations as rewrite rules `x_j x_i -> rhs` and the reduction
//! engine computing ordered normal forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{denominator_factors, Assignment, Coeff, ParamPoly, RatFunc, Rational, Sym};
use crate::error::{Error, Result};
use crate::freealg::{word_compare, DegreeMap, NCPoly, Word};

/// Default permissive-mode step budget per input term.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Strict,
    Permissive { cap: usize },
}

/// A rule `x_j x_i -> rhs` with `j > i`. For a bracket `[x_j, x_i] = P` the
/// stored rhs is `x_i x_j + P`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub j: usize,
    pub i: usize,
    pub rhs: NCPoly,
}

impl Relation {
    pub fn lhs(&self) -> Word {
        Word::from_indices(&[self.j, self.i])
    }

    /// The bracket value `[x_j, x_i] = rhs - x_i x_j`.
    pub fn bracket(&self) -> NCPoly {
        self.rhs
            .sub(&NCPoly::monomial(Word::from_indices(&[self.i, self.j]), RatFunc::one()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub rule: (usize, usize),
    pub word: Option<Word>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A complete commutator presentation: one rule per misordered generator
/// pair. Immutable once built.
#[derive(Clone, Debug)]
pub struct RelationSet {
    generators: Vec<String>,
    params: Vec<Sym>,
    degrees: DegreeMap,
    rules: BTreeMap<(usize, usize), Relation>,
    mode: Mode,
}

impl PartialEq for RelationSet {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.degrees == other.degrees
            && self.mode == other.mode
            && self.rules == other.rules
            && self.params.iter().collect::<BTreeSet<_>>()
                == other.params.iter().collect::<BTreeSet<_>>()
    }
}

impl RelationSet {
    /// Builds a relation set from brackets `[x_j, x_i] = P` keyed by `(j, i)`.
    /// Missing pairs commute.
    pub fn from_brackets(
        generators: Vec<String>,
        params: Vec<Sym>,
        degrees: DegreeMap,
        brackets: BTreeMap<(usize, usize), NCPoly>,
        mode: Mode,
    ) -> Result<RelationSet> {
        let n = generators.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::InvalidRelations(format!("unsupported generator count {n}")));
        }
        if degrees.len() != n {
            return Err(Error::InvalidRelations(
                "degree map length differs from generator count".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(Error::InvalidRelations(format!("duplicate generator {g}")));
            }
        }
        let mut rules = BTreeMap::new();
        for (&(j, i), p) in &brackets {
            if j <= i || j >= n {
                return Err(Error::InvalidRelations(format!(
                    "bracket [{},{}] is not of the form [higher,lower]",
                    generators.get(j).map_or("?", String::as_str),
                    generators.get(i).map_or("?", String::as_str)
                )));
            }
            if p.words().any(|w| w.letters().iter().any(|&g| g as usize >= n)) {
                return Err(Error::InvalidRelations("unknown generator in relation".into()));
            }
        }
        for j in 0..n {
            for i in 0..j {
                let p = brackets.get(&(j, i)).cloned().unwrap_or_else(NCPoly::zero);
                let rhs = p.add(&NCPoly::monomial(Word::from_indices(&[i, j]), RatFunc::one()));
                rules.insert((j, i), Relation { j, i, rhs });
            }
        }
        Ok(RelationSet {
            generators,
            params,
            degrees,
            rules,
            mode,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn params(&self) -> &[Sym] {
        &self.params
    }

    pub fn degrees(&self) -> &DegreeMap {
        &self.degrees
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rules(&self) -> impl Iterator<Item = &Relation> {
        self.rules.values()
    }

    pub fn rule(&self, j: usize, i: usize) -> Option<&Relation> {
        self.rules.get(&(j, i))
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn with_mode(&self, mode: Mode) -> RelationSet {
        RelationSet {
            mode,
            ..self.clone()
        }
    }

    pub fn with_degrees(&self, degrees: DegreeMap) -> Result<RelationSet> {
        if degrees.len() != self.n() {
            return Err(Error::InvalidRelations(
                "degree map length differs from generator count".into(),
            ));
        }
        Ok(RelationSet {
            degrees,
            ..self.clone()
        })
    }

    /// The bracket values `[x_j, x_i]` keyed by `(j, i)`, omitting zeros.
    pub fn brackets(&self) -> BTreeMap<(usize, usize), NCPoly> {
        self.rules
            .iter()
            .map(|(&k, r)| (k, r.bracket()))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Parameter expressions that must not vanish: the denominator factors of
    /// every rule coefficient.
    pub fn assumptions(&self) -> Vec<ParamPoly> {
        let coeffs: Vec<&RatFunc> = self.rules.values().flat_map(|r| r.rhs.terms().map(|(_, c)| c)).collect();
        denominator_factors(coeffs)
    }

    /// Substitutes rational values for some parameters.
    pub fn specialize(&self, assignment: &Assignment) -> Result<RelationSet> {
        let mut rules = BTreeMap::new();
        for (&k, r) in &self.rules {
            let rhs = r.rhs.try_map_coeffs(|c| c.substitute(assignment))?;
            rules.insert(k, Relation { rhs, ..r.clone() });
        }
        Ok(RelationSet {
            rules,
            params: self
                .params
                .iter()
                .copied()
                .filter(|s| !assignment.contains_key(s))
                .collect(),
            ..self.clone()
        })
    }

    /// Substitutes rational functions for parameters.
    pub fn compose_params(&self, images: &std::collections::HashMap<Sym, RatFunc>) -> Result<RelationSet> {
        let mut rules = BTreeMap::new();
        for (&k, r) in &self.rules {
            let rhs = r.rhs.try_map_coeffs(|c| c.compose(images))?;
            rules.insert(k, Relation { rhs, ..r.clone() });
        }
        let mut params: BTreeSet<Sym> = self.params.iter().copied().filter(|s| !images.contains_key(s)).collect();
        for f in images.values() {
            params.extend(f.numer().symbols());
            for (d, _) in f.denom_factors() {
                params.extend(d.symbols());
            }
        }
        Ok(RelationSet {
            rules,
            params: params.into_iter().collect(),
            ..self.clone()
        })
    }

    /// The parameters actually occurring in some rule.
    pub fn used_params(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        for r in self.rules.values() {
            for (_, c) in r.rhs.terms() {
                out.extend(c.numer().symbols());
                for (d, _) in c.denom_factors() {
                    out.extend(d.symbols());
                }
            }
        }
        out
    }

    /// Renders a word compactly (`BA`) when all generator names are single
    /// characters.
    pub fn word_name(&self, w: &Word) -> String {
        if self.generators.iter().all(|g| g.chars().count() == 1) && !w.is_empty() {
            w.letters().iter().map(|&g| self.generators[g as usize].as_str()).collect()
        } else {
            w.render(&self.generators)
        }
    }

    pub fn render(&self, f: &NCPoly) -> String {
        f.render(&self.generators, &self.degrees)
    }

    /// Admissibility and shape diagnostics. Admissibility is waived in
    /// permissive mode.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for r in self.rules.values() {
            let lhs = r.lhs();
            let tag = format!("[{},{}]", self.generators[r.j], self.generators[r.i]);
            if r.rhs.words().any(|w| *w == lhs) {
                out.push(Diagnostic {
                    rule: (r.j, r.i),
                    word: Some(lhs.clone()),
                    message: format!("{tag}: lhs occurs in rhs"),
                });
                continue;
            }
            if self.mode != Mode::Strict {
                continue;
            }
            for w in r.rhs.words() {
                if !w.is_ordered() {
                    out.push(Diagnostic {
                        rule: (r.j, r.i),
                        word: Some(w.clone()),
                        message: format!("{tag}: {} is not an ordered word", self.word_name(w)),
                    });
                } else if word_compare(w, &lhs, &self.degrees) != Ordering::Less {
                    out.push(Diagnostic {
                        rule: (r.j, r.i),
                        word: Some(w.clone()),
                        message: format!(
                            "{tag}: {} not \u{227a} {}",
                            self.word_name(w),
                            self.word_name(&lhs)
                        ),
                    });
                }
            }
        }
        out
    }
}

/// Which misordered adjacent pair a rewrite step replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random(u64),
}

/// One rewrite step: `coeff * prefix * (lhs - rhs) * suffix` was subtracted.
#[derive(Clone, Debug)]
pub struct Step<C: Coeff> {
    pub word: Word,
    pub position: usize,
    pub rule: (usize, usize),
    pub coeff: C,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace<C: Coeff> {
    pub steps: usize,
    pub applications: Option<Vec<Step<C>>>,
}

/// Rules with coefficients in `C`, ready for repeated reductions.
#[derive(Clone, Debug)]
pub struct Reducer<C: Coeff> {
    n: usize,
    degrees: DegreeMap,
    rules: Vec<Vec<(Word, C)>>,
    budget: Option<usize>,
}

impl Reducer<RatFunc> {
    pub fn symbolic(r: &RelationSet) -> Reducer<RatFunc> {
        Reducer::new(r).expect("symbolic coefficients always convert")
    }
}

impl<C: Coeff> Reducer<C> {
    /// Fails with [`Error::NotNumeric`] when a rule coefficient has no
    /// representation in `C`.
    pub fn new(r: &RelationSet) -> Result<Reducer<C>> {
        let n = r.n();
        let mut rules = vec![Vec::new(); n * n];
        for rel in r.rules.values() {
            let mut v = Vec::with_capacity(rel.rhs.len());
            for (w, c) in rel.rhs.terms() {
                let c = C::from_ratfunc(c).ok_or_else(|| {
                    Error::NotNumeric(format!(
                        "coefficient {c} of {} in the rule for {}",
                        r.word_name(w),
                        r.word_name(&rel.lhs())
                    ))
                })?;
                v.push((w.clone(), c));
            }
            rules[rel.j * n + rel.i] = v;
        }
        Ok(Reducer {
            n,
            degrees: r.degrees.clone(),
            rules,
            budget: match r.mode {
                Mode::Strict => None,
                Mode::Permissive { cap } => Some(cap),
            },
        })
    }

    pub fn degrees(&self) -> &DegreeMap {
        &self.degrees
    }

    pub fn reduce(&self, f: &NCPoly<C>, strategy: Strategy) -> Result<NCPoly<C>> {
        self.run(f, strategy, false).map(|(p, _)| p)
    }

    pub fn reduce_traced(
        &self,
        f: &NCPoly<C>,
        strategy: Strategy,
        keep: bool,
    ) -> Result<(NCPoly<C>, ReductionTrace<C>)> {
        self.run(f, strategy, keep)
    }

    /// Normal form of a single word with unit coefficient.
    pub fn reduce_word(&self, w: &Word) -> Result<NCPoly<C>> {
        self.reduce(&NCPoly::monomial(w.clone(), C::one()), Strategy::Leftmost)
    }

    /// Worklist reduction: the graded-largest pending word is rewritten first,
    /// so equal words produced by different branches merge before expansion.
    fn run(&self, f: &NCPoly<C>, strategy: Strategy, keep: bool) -> Result<(NCPoly<C>, ReductionTrace<C>)> {
        let mut pending: BTreeMap<(u32, Word), C> = BTreeMap::new();
        let mut done = NCPoly::zero();
        for (w, c) in f.terms() {
            if w.is_ordered() {
                done.add_term(w.clone(), c.clone());
            } else {
                pending.insert((self.degrees.word_degree(w), w.clone()), c.clone());
            }
        }
        let budget = self.budget.map(|cap| cap.saturating_mul(f.len().max(1)));
        let mut rng = match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut steps = 0usize;
        let mut apps = keep.then(Vec::new);
        while let Some(((_, w), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            if let Some(b) = budget {
                if steps >= b {
                    return Err(Error::ReductionCap(b));
                }
            }
            steps += 1;
            let pos = match strategy {
                Strategy::Leftmost => w.descents().next(),
                Strategy::Rightmost => w.descents().last(),
                Strategy::Random(_) => {
                    let d: Vec<usize> = w.descents().collect();
                    let k = rng.as_mut().unwrap().gen_range(0..d.len());
                    Some(d[k])
                }
            }
            .expect("pending words are misordered");
            let (j, i) = (w.letters()[pos] as usize, w.letters()[pos + 1] as usize);
            if let Some(a) = apps.as_mut() {
                a.push(Step {
                    word: w.clone(),
                    position: pos,
                    rule: (j, i),
                    coeff: c.clone(),
                });
            }
            for (m, k) in &self.rules[j * self.n + i] {
                let nw = w.splice(pos, 2, m);
                let nc = c.mul(k);
                if nw.is_ordered() {
                    done.add_term(nw, nc);
                } else {
                    let key = (self.degrees.word_degree(&nw), nw);
                    match pending.get_mut(&key) {
                        Some(slot) => slot.add_assign(&nc),
                        None => {
                            pending.insert(key, nc);
                        }
                    }
                }
            }
        }
        Ok((
            done,
            ReductionTrace {
                steps,
                applications: apps,
            },
        ))
    }
}

/// Normal form with symbolic coefficients.
pub fn normal_form(f: &NCPoly, r: &RelationSet, strategy: Strategy) -> Result<NCPoly> {
    Reducer::symbolic(r).reduce(f, strategy)
}

/// `[x_j, x_i]` reduced to normal form.
pub fn bracket(r: &RelationSet, j: usize, i: usize) -> Result<NCPoly> {
    let (x, y) = (NCPoly::gen(j), NCPoly::gen(i));
    normal_form(&x.commutator(&y), r, Strategy::Leftmost)
}

/// Numeric reduction after substituting a full assignment.
pub fn numeric_reducer(r: &RelationSet, assignment: &Assignment) -> Result<Reducer<Rational>> {
    Reducer::new(&r.specialize(assignment)?)
}

/// Searches weakly increasing degree maps with values in `1..=bound` and
/// returns the lexicographically first one under which every rule is
/// strictly admissible.
pub fn find_degree_map(r: &RelationSet, bound: u32) -> Option<DegreeMap> {
    let n = r.n();
    let mut cur = vec![1u32; n];
    fn admissible(r: &RelationSet, d: &DegreeMap) -> bool {
        r.rules().all(|rel| {
            let lhs = rel.lhs();
            rel.rhs
                .words()
                .all(|w| *w != lhs && w.is_ordered() && word_compare(w, &lhs, d) == Ordering::Less)
        })
    }
    fn rec(r: &RelationSet, bound: u32, k: usize, cur: &mut Vec<u32>) -> bool {
        if k == cur.len() {
            return admissible(r, &DegreeMap::new(cur.clone()).unwrap());
        }
        let lo = if k == 0 { 1 } else { cur[k - 1] };
        for v in lo..=bound {
            cur[k] = v;
            if rec(r, bound, k + 1, cur) {
                return true;
            }
        }
        false
    }
    if bound == 0 {
        return None;
    }
    rec(r, bound, 0, &mut cur).then(|| DegreeMap::new(cur).unwrap())
}
