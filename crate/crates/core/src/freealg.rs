//! Generators, words of the free monoid, the graded-lexicographic order and
//! noncommutative polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use smallvec::SmallVec;

use crate::coeff::{Coeff, RatFunc};
use crate::error::{Error, Result};

/// A word in the generators, stored as 0-based generator indices.
///
/// The derived `Ord` is plain lexicographic order with a proper prefix
/// preceding its extensions; graded comparison goes through [`word_compare`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn unit() -> Word {
        Word(SmallVec::new())
    }

    pub fn gen(i: usize) -> Word {
        Word(SmallVec::from_slice(&[i as u8]))
    }

    pub fn from_indices(ix: &[usize]) -> Word {
        Word(ix.iter().map(|&i| i as u8).collect())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self[..at] ++ middle ++ self[at + skip..]`
    pub(crate) fn splice(&self, at: usize, skip: usize, middle: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.0.len() + middle.0.len() - skip.min(self.0.len()));
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[at + skip..]);
        Word(v)
    }

    /// Generator indices weakly increase along the word.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|p| p[0] <= p[1])
    }

    /// Positions `p` with `w[p] > w[p+1]`.
    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(k, _)| k)
    }

    /// Exponent vector of an ordered word over `n` generators.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &g in self.0.iter() {
            e[g as usize] += 1;
        }
        e
    }

    /// Renders with generator names, e.g. `A^2*B`.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut k = 0;
        while k < self.0.len() {
            let g = self.0[k];
            let mut run = 1;
            while k + run < self.0.len() && self.0[k + run] == g {
                run += 1;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&names[g as usize]);
            if run > 1 {
                let _ = write!(out, "^{run}");
            }
            k += run;
        }
        out
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &g in self.0.iter() {
            write!(f, "{}", (b'A' + g) as char)?;
        }
        Ok(())
    }
}

/// Graded degree `d(x_i) = m_i` of each generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeMap(Vec<u32>);

impl DegreeMap {
    /// Every value must be at least 1 and the sequence weakly increasing.
    pub fn new(values: Vec<u32>) -> Result<DegreeMap> {
        if values.iter().any(|&v| v == 0) {
            return Err(Error::Other("graded degrees must be positive".into()));
        }
        if values.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::Other(
                "graded degrees must weakly increase with generator order".into(),
            ));
        }
        Ok(DegreeMap(values))
    }

    pub fn uniform(n: usize) -> DegreeMap {
        DegreeMap(vec![1; n])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn of(&self, g: usize) -> u32 {
        self.0[g]
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&g| self.0[g as usize]).sum()
    }
}

/// Graded-lexicographic comparison: graded degree first, then the first
/// differing letter, with a proper prefix preceding its extensions.
pub fn word_compare(u: &Word, v: &Word, d: &DegreeMap) -> Ordering {
    d.word_degree(u)
        .cmp(&d.word_degree(v))
        .then_with(|| u.cmp(v))
}

/// All ordered words with `min_len <= length <= max_len` over `n` generators,
/// in increasing length and lexicographic order.
pub fn ordered_words(n: usize, min_len: usize, max_len: usize) -> Vec<Word> {
    fn rec(n: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(Word::from_indices(cur));
            return;
        }
        for g in start..n {
            cur.push(g);
            rec(n, len, g, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in min_len..=max_len {
        rec(n, len, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// Ordered words of polynomial length at most `max_poly_degree` that are
/// strictly below `lhs` in the graded-lexicographic order: the monomials a
/// rewrite rule for `lhs` may produce.
pub fn admissible_monomials(d: &DegreeMap, lhs: &Word, max_poly_degree: usize) -> Vec<Word> {
    let mut out: Vec<Word> = ordered_words(d.len(), 0, max_poly_degree)
        .into_iter()
        .filter(|w| word_compare(w, lhs, d) == Ordering::Less)
        .collect();
    out.sort_by(|a, b| word_compare(a, b, d));
    out
}

/// A finite linear combination of words.
#[derive(Clone, PartialEq, Default)]
pub struct NCPoly<C: Coeff = RatFunc> {
    terms: BTreeMap<Word, C>,
}

impl<C: Coeff> NCPoly<C> {
    pub fn zero() -> Self {
        NCPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::unit(), C::one())
    }

    pub fn gen(i: usize) -> Self {
        Self::monomial(Word::gen(i), C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Word::unit(), c)
    }

    pub fn monomial(w: Word, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, C)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        NCPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(k)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Concatenation product, extended bilinearly. No reduction is applied.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f g - g f`, unreduced.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// `f g + g f`, unreduced.
    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    /// Graded degree: the maximum over stored words.
    pub fn degree(&self, d: &DegreeMap) -> Option<u32> {
        self.terms.keys().map(|w| d.word_degree(w)).max()
    }

    /// Longest stored word.
    pub fn poly_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The largest word under [`word_compare`] and its coefficient. Any stored
    /// coefficient counts as nonzero, including symbolic ones that vanish at
    /// special parameter values.
    pub fn leading_monomial(&self, d: &DegreeMap) -> Result<(Word, C)> {
        self.terms
            .iter()
            .max_by(|a, b| word_compare(a.0, b.0, d))
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(Error::LeadingMonomialOfZero)
    }

    /// Terms sorted by descending graded-lexicographic order.
    pub fn sorted_terms(&self, d: &DegreeMap) -> Vec<(&Word, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| word_compare(b.0, a.0, d));
        v
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> NCPoly<D> {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<NCPoly<D>> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn to_symbolic(&self) -> NCPoly<RatFunc> {
        self.map_coeffs(|c| c.to_ratfunc())
    }

    /// Pretty-prints with generator names, descending graded-lex order.
    pub fn render(&self, names: &[String], d: &DegreeMap) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.sorted_terms(d).into_iter().enumerate() {
            let c = c.to_ratfunc();
            let (neg, body) = c.fmt_signed();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let unit_coeff = body == "1";
            if w.is_empty() {
                let abs = if neg { -&c } else { c.clone() };
                if k > 0 && abs.is_compound() && abs.is_polynomial() {
                    let _ = write!(out, "({body})");
                } else {
                    out.push_str(&body);
                }
                continue;
            }
            if !unit_coeff {
                let abs = if neg { -&c } else { c.clone() };
                if abs.is_compound() && abs.is_polynomial() {
                    let _ = write!(out, "({body})*");
                } else {
                    let _ = write!(out, "{body}*");
                }
            }
            out.push_str(&w.render(names));
        }
        out
    }
}

impl<C: Coeff> std::fmt::Debug for NCPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}
