//! Exact coefficient arithmetic: rationals, polynomials in named parameters,
//! and rational functions of those.

mod poly;
mod ratfunc;
mod symbol;

use std::fmt::Debug;

pub use poly::{Monomial, ParamPoly};
pub use ratfunc::{clear_denominators, denominator_factors, RatFunc};
pub use symbol::Sym;

pub use ratfunc::RationalDisplay;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

/// A parameter assignment.
pub type Assignment = std::collections::HashMap<Sym, Rational>;

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// The field operations the rewriting engine needs from a coefficient type.
///
/// Implemented for plain rationals (fast path for numeric parameter points)
/// and for rational functions in the parameters.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Converts from the symbolic representation, if representable.
    fn from_ratfunc(f: &RatFunc) -> Option<Self>;
    fn to_ratfunc(&self) -> RatFunc;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn add_assign(&mut self, other: &Self) {
        *self = Coeff::add(self, other);
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!num_traits::Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_ratfunc(f: &RatFunc) -> Option<Self> {
        f.as_rational()
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_rational(self.clone())
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self).ok()
    }
    fn from_ratfunc(f: &RatFunc) -> Option<Self> {
        Some(f.clone())
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
}
