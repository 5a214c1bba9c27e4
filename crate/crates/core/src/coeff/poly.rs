use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{Rational, Sym};
use crate::error::{Error, Result};

/// A power product of parameters, stored sparsely and sorted by symbol.
///
/// Monomials are ordered by total degree, then lexicographically: at the
/// first symbol (by name) where the exponents differ, the larger exponent
/// wins. This is a monomial order, so it doubles as the leading-term order
/// for exact division.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Sym, u32); 4]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Sym) -> Monomial {
        let mut v = SmallVec::new();
        v.push((s, 1));
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Sym, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn exponent(&self, s: Sym) -> u32 {
        self.0
            .iter()
            .find(|(t, _)| *t == s)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(s, e) in self.0.iter() {
            if j < other.0.len() && other.0[j].0 < s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - f)),
                }
            } else {
                out.push((s, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let mut i = 0;
        while i < a.len() && i < b.len() {
            if a[i].0 != b[i].0 {
                // The side holding the alphabetically earlier symbol has the
                // larger exponent there.
                return if a[i].0 < b[i].0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
            match a[i].1.cmp(&b[i].1) {
                Ordering::Equal => i += 1,
                ord => return ord,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A commutative polynomial in named parameters with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> ParamPoly {
        ParamPoly::default()
    }

    pub fn one() -> ParamPoly {
        ParamPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> ParamPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn from_int(n: i64) -> ParamPoly {
        ParamPoly::constant(Rational::from_integer(n.into()))
    }

    pub fn var(s: Sym) -> ParamPoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(s), Rational::one());
        ParamPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> ParamPoly {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().map(|(s, _)| s))
            .collect()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> ParamPoly {
        let mut acc = ParamPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Power with a signed exponent; negative exponents belong to `RatFunc`.
    pub fn powi(&self, e: i64) -> Result<ParamPoly> {
        if e < 0 {
            return Err(Error::NegativeExponent(e));
        }
        Ok(self.pow(e as u32))
    }

    /// Replaces assigned symbols by their values; the rest stay symbolic.
    pub fn substitute(&self, assignment: &HashMap<Sym, Rational>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
            for (s, e) in m.factors() {
                match assignment.get(&s) {
                    Some(v) => coeff *= num_traits::pow(v.clone(), e as usize),
                    None => rest.push((s, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        out
    }

    /// Replaces symbols by polynomials.
    pub fn compose(&self, images: &HashMap<Sym, ParamPoly>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = ParamPoly::constant(c.clone());
            let mut rest: SmallVec<[(Sym, u32); 4]> = SmallVec::new();
            for (s, e) in m.factors() {
                match images.get(&s) {
                    Some(p) => acc = &acc * &p.pow(e),
                    None => rest.push((s, e)),
                }
            }
            out = &out + &acc.mul_term(&Monomial(rest), &Rational::one());
        }
        out
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Splits off rational content and sign: `self = unit * primitive` with the
    /// primitive part having a positive leading coefficient.
    pub fn primitive(&self) -> (Rational, ParamPoly) {
        if self.is_zero() {
            return (Rational::one(), ParamPoly::zero());
        }
        let mut unit = self.content();
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            unit = -unit;
        }
        let inv = unit.recip();
        (unit, self.scale(&inv))
    }

    /// Exact division: `Some(q)` with `self = q * divisor`, or `None`.
    pub fn exact_div(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.terms.len() == 1 {
            let mut q = ParamPoly::zero();
            let inv = lc.recip();
            for (m, c) in &self.terms {
                q.terms.insert(m.div(lm)?, c * &inv);
            }
            return Some(q);
        }
        let inv = lc.recip();
        let mut rem = self.clone();
        let mut q = ParamPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &inv;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Evaluates with every symbol assigned.
    pub fn eval(&self, assignment: &HashMap<Sym, Rational>) -> Option<Rational> {
        self.substitute(assignment).as_constant()
    }
}

impl<'a> Add<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        if self.is_zero() || rhs.is_zero() {
            return ParamPoly::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        ParamPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ParamPoly> for ParamPoly {
            type Output = ParamPoly;
            fn $f(self, rhs: ParamPoly) -> ParamPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        -&self
    }
}

/// Writes a rational as `p` or `p/q` (sign included).
pub(crate) fn fmt_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                fmt_rational(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                fmt_rational(f, &mag)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> ParamPoly {
        ParamPoly::var(Sym::new(s))
    }

    fn int(n: i64) -> ParamPoly {
        ParamPoly::from_int(n)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (v("a"), v("b"));
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(p, &a.pow(2) - &b.pow(2));
        assert_eq!(p.to_string(), "a^2 - b^2");
    }

    #[test]
    fn expansion_prints_in_descending_degree() {
        let l = v("lambda");
        let p = &(&l + &int(1)) * &(&l + &int(2));
        assert_eq!(p.to_string(), "lambda^2 + 3*lambda + 2");
    }

    #[test]
    fn c_squared_row_shape() {
        let (b, c) = (v("b101"), v("c011"));
        let p = &(&(&int(1) + &b) * &(&int(1) + &c)) - &int(1);
        assert_eq!(p, &(&b + &c) + &(&b * &c));
        assert_eq!(p.to_string(), "b101*c011 + b101 + c011");
    }

    #[test]
    fn substitution_full_and_partial() {
        let l = Sym::new("lambda");
        let p = &(&ParamPoly::var(l).pow(2) + &ParamPoly::var(l).scale(&Rational::from_integer(3.into())))
            + &int(3);
        let mut a = HashMap::new();
        a.insert(l, Rational::from_integer(1.into()));
        assert_eq!(p.substitute(&a), int(7));

        let q = &(&v("a") * &v("b")) + &v("c");
        let mut a = HashMap::new();
        a.insert(Sym::new("a"), Rational::from_integer(2.into()));
        assert_eq!(q.substitute(&a), &v("b").scale(&Rational::from_integer(2.into())) + &v("c"));
    }

    #[test]
    fn negative_power_is_an_error() {
        assert!(matches!(v("x").powi(-1), Err(Error::NegativeExponent(-1))));
        assert_eq!(v("x").powi(3).unwrap(), v("x").pow(3));
    }

    #[test]
    fn exact_division() {
        let (x, y) = (v("x"), v("y"));
        let f = &(&x + &y) * &(&(&x * &y) - &int(3));
        assert_eq!(f.exact_div(&(&x + &y)), Some(&(&x * &y) - &int(3)));
        assert_eq!(f.exact_div(&(&x - &y)), None);
        assert_eq!((&x + &int(1)).exact_div(&x), None);
    }

    #[test]
    fn primitive_part_has_positive_lead() {
        let l = v("lambda");
        let p = (&l.scale(&Rational::new((-2).into(), 3.into()))) - &int(2);
        let (u, q) = p.primitive();
        assert_eq!(u, Rational::new((-2).into(), 3.into()));
        assert_eq!(q, &l + &int(3));
    }
}
