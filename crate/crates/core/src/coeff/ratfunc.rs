use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::poly::fmt_rational;
use super::{ParamPoly, Rational, Sym};
use crate::error::{Error, Result};

/// A rational function in the parameters.
///
/// The denominator is kept as a product of primitive factors (positive
/// leading coefficient, rational content 1) raised to positive powers. No
/// multivariate gcd is attempted; after every operation the numerator is
/// trial-divided by each factor, which cancels the common cases such as
/// `-(l+2)/(l+1) * (l+1)`. Equality is decided by cross-multiplication.
#[derive(Clone, Default)]
pub struct RatFunc {
    num: ParamPoly,
    den: BTreeMap<ParamPoly, u32>,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc::default()
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(ParamPoly::one())
    }

    pub fn from_poly(p: ParamPoly) -> RatFunc {
        RatFunc {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn from_rational(c: Rational) -> RatFunc {
        RatFunc::from_poly(ParamPoly::constant(c))
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::from_poly(ParamPoly::from_int(n))
    }

    pub fn var(s: Sym) -> RatFunc {
        RatFunc::from_poly(ParamPoly::var(s))
    }

    /// `num / den`; fails on a zero denominator.
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<RatFunc> {
        RatFunc::from_poly(num).div_checked(&RatFunc::from_poly(den))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// `Some(c)` when this is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else if self.num.is_zero() {
            Some(Rational::zero())
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> Option<&ParamPoly> {
        self.den.is_empty().then_some(&self.num)
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    /// The expanded denominator.
    pub fn denom(&self) -> ParamPoly {
        let mut d = ParamPoly::one();
        for (f, &e) in &self.den {
            d = &d * &f.pow(e);
        }
        d
    }

    /// The primitive denominator factors with multiplicities.
    pub fn denom_factors(&self) -> impl Iterator<Item = (&ParamPoly, u32)> {
        self.den.iter().map(|(f, &e)| (f, e))
    }

    /// A size measure used for pivot selection: number of parameter terms in
    /// numerator and denominator.
    pub fn complexity(&self) -> usize {
        self.num.num_terms() + self.den.keys().map(ParamPoly::num_terms).sum::<usize>()
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    fn cancel(mut self) -> RatFunc {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        if self.den.is_empty() {
            return self;
        }
        let keys: Vec<ParamPoly> = self.den.keys().cloned().collect();
        for f in keys {
            loop {
                let e = self.den[&f];
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        if e == 1 {
                            self.den.remove(&f);
                            break;
                        }
                        *self.den.get_mut(&f).unwrap() = e - 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    fn with_den(num: ParamPoly, den: BTreeMap<ParamPoly, u32>) -> RatFunc {
        RatFunc { num, den }.cancel()
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<RatFunc> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, prim) = self.num.primitive();
        let num = self.denom().scale(&unit.recip());
        if prim.is_constant() {
            return Ok(RatFunc::from_poly(num));
        }
        // Monomial factors go in separately so later numerators can cancel
        // them one at a time.
        let mut den = BTreeMap::new();
        let mut rest = prim;
        for s in rest.symbols() {
            let k = rest.terms().map(|(m, _)| m.exponent(s)).min().unwrap_or(0);
            if k > 0 {
                let v = ParamPoly::var(s);
                rest = rest.exact_div(&v.pow(k)).expect("monomial divides every term");
                den.insert(v, k);
            }
        }
        if !rest.is_constant() {
            den.insert(rest, 1);
        }
        Ok(RatFunc::with_den(num, den))
    }

    pub fn div_checked(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.iter().map(|(f, &k)| (f.clone(), k * e)).collect(),
        }
    }

    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs() as u32))
        }
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitutes rational values; fails if the denominator vanishes.
    pub fn substitute(&self, assignment: &HashMap<Sym, Rational>) -> Result<RatFunc> {
        let num = self.num.substitute(assignment);
        let mut out = RatFunc::from_poly(num);
        for (f, &e) in &self.den {
            let g = f.substitute(assignment);
            if g.is_zero() {
                return Err(Error::VanishingDenominator(f.to_string()));
            }
            out = out.div_checked(&RatFunc::from_poly(g.pow(e)))?;
        }
        Ok(out)
    }

    /// Substitutes rational functions for symbols.
    pub fn compose(&self, images: &HashMap<Sym, RatFunc>) -> Result<RatFunc> {
        fn poly_image(p: &ParamPoly, images: &HashMap<Sym, RatFunc>) -> RatFunc {
            let mut acc = RatFunc::zero();
            for (m, c) in p.terms() {
                let mut t = RatFunc::from_rational(c.clone());
                for (s, e) in m.factors() {
                    let base = images.get(&s).cloned().unwrap_or_else(|| RatFunc::var(s));
                    t = &t * &base.pow(e);
                }
                acc = &acc + &t;
            }
            acc
        }
        let mut out = poly_image(&self.num, images);
        for (f, &e) in &self.den {
            let g = poly_image(f, images);
            if g.is_zero() {
                return Err(Error::VanishingDenominator(f.to_string()));
            }
            out = out.div_checked(&g.pow(e))?;
        }
        Ok(out)
    }

    /// Multiplies by the least common multiple of the factor maps and returns
    /// the resulting polynomial numerator.
    pub(crate) fn times_denominator(&self, den: &BTreeMap<ParamPoly, u32>) -> ParamPoly {
        let mut num = self.num.clone();
        for (f, &e) in den {
            let own = self.den.get(f).copied().unwrap_or(0);
            debug_assert!(own <= e);
            if e > own {
                num = &num * &f.pow(e - own);
            }
        }
        num
    }
}

/// Rewrites the factor maps over a common base: whenever one factor divides
/// another exactly, the larger is replaced by the smaller times the quotient.
/// The represented products do not change.
fn refine(maps: &mut [BTreeMap<ParamPoly, u32>]) {
    if maps.iter().filter(|m| !m.is_empty()).count() < 2 {
        return;
    }
    loop {
        let base: std::collections::BTreeSet<ParamPoly> =
            maps.iter().flat_map(|m| m.keys().cloned()).collect();
        let mut hit = None;
        'search: for f in &base {
            for g in &base {
                if f == g || g.total_degree() < f.total_degree() {
                    continue;
                }
                if let Some(q) = g.exact_div(f) {
                    hit = Some((f.clone(), g.clone(), q.primitive().1));
                    break 'search;
                }
            }
        }
        let Some((f, g, q)) = hit else { return };
        for m in maps.iter_mut() {
            if let Some(e) = m.remove(&g) {
                *m.entry(f.clone()).or_insert(0) += e;
                if !q.is_constant() {
                    *m.entry(q.clone()).or_insert(0) += e;
                }
            }
        }
    }
}

fn lcm_map(
    a: &BTreeMap<ParamPoly, u32>,
    b: &BTreeMap<ParamPoly, u32>,
) -> BTreeMap<ParamPoly, u32> {
    let mut out = a.clone();
    for (f, &e) in b {
        let slot = out.entry(f.clone()).or_insert(0);
        if *slot < e {
            *slot = e;
        }
    }
    out
}

struct View<'a> {
    num: &'a ParamPoly,
    den: std::borrow::Cow<'a, BTreeMap<ParamPoly, u32>>,
}

impl View<'_> {
    fn times_denominator(&self, den: &BTreeMap<ParamPoly, u32>) -> ParamPoly {
        let mut num = self.num.clone();
        for (f, &e) in den {
            let own = self.den.get(f).copied().unwrap_or(0);
            if e > own {
                num = &num * &f.pow(e - own);
            }
        }
        num
    }
}

/// Both operands over a refined common factor base.
fn rebased<'a>(x: &'a RatFunc, y: &'a RatFunc) -> (View<'a>, View<'a>) {
    use std::borrow::Cow;
    if x.den.is_empty() || y.den.is_empty() || x.den == y.den {
        return (
            View { num: &x.num, den: Cow::Borrowed(&x.den) },
            View { num: &y.num, den: Cow::Borrowed(&y.den) },
        );
    }
    let mut maps = [x.den.clone(), y.den.clone()];
    refine(&mut maps);
    let [a, b] = maps;
    (
        View { num: &x.num, den: Cow::Owned(a) },
        View { num: &y.num, den: Cow::Owned(b) },
    )
}

impl<'a> Add<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc::with_den(&self.num + &rhs.num, self.den.clone());
        }
        let (a, b) = rebased(self, rhs);
        let den = lcm_map(&a.den, &b.den);
        let num = &a.times_denominator(&den) + &b.times_denominator(&den);
        RatFunc::with_den(num, den)
    }
}

impl<'a> Sub<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let num = &self.num * &rhs.num;
        if rhs.den.is_empty() && self.den.is_empty() {
            return RatFunc::from_poly(num);
        }
        let (a, b) = rebased(self, rhs);
        let mut den = a.den.into_owned();
        for (f, &e) in b.den.iter() {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        RatFunc::with_den(num, den)
    }
}

/// Panics on division by zero; use [`RatFunc::div_checked`] for a `Result`.
impl<'a> Div<&'a RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self.div_checked(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $f(self, rhs: RatFunc) -> RatFunc {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &RatFunc) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (a, b) = rebased(self, other);
        let den = lcm_map(&a.den, &b.den);
        a.times_denominator(&den) == b.times_denominator(&den)
    }
}

impl Eq for RatFunc {}

impl From<ParamPoly> for RatFunc {
    fn from(p: ParamPoly) -> RatFunc {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> RatFunc {
        RatFunc::from_rational(c)
    }
}

impl RatFunc {
    /// True when printing as a factor of a product needs parentheses.
    pub(crate) fn is_compound(&self) -> bool {
        !self.den.is_empty() || self.num.num_terms() > 1
    }

    /// Writes `self` as a coefficient: the rational magnitude is returned
    /// separately so callers can fold the sign into a surrounding sum.
    pub(crate) fn fmt_signed(&self) -> (bool, String) {
        if let Some(c) = self.as_rational() {
            let neg = c.is_negative();
            let mut s = String::new();
            let mag = c.abs();
            use std::fmt::Write;
            let _ = write!(s, "{}", RationalDisplay(&mag));
            return (neg, s);
        }
        if self.num.num_terms() == 1 {
            let (_, c) = self.num.leading_term().unwrap();
            if c.is_negative() {
                return (true, (-self).to_string());
            }
        }
        (false, self.to_string())
    }
}

/// Prints a rational as `p/q` or `p`.
pub struct RationalDisplay<'a>(pub &'a Rational);

impl fmt::Display for RationalDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(f, self.0)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        f.write_str("/")?;
        let atomic = |p: &ParamPoly| {
            p.num_terms() == 1 && p.leading_term().is_some_and(|(m, _)| m.factors().count() == 1)
        };
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(p, &e)| {
                let base = if atomic(p) { p.to_string() } else { format!("({p})") };
                if e > 1 {
                    format!("{base}^{e}")
                } else {
                    base
                }
            })
            .collect();
        let single = parts.len() == 1 && self.den.iter().all(|(p, &e)| e == 1 || atomic(p));
        if single || (parts.len() == 1 && !parts[0].contains('^')) {
            f.write_str(&parts[0])
        } else {
            write!(f, "({})", parts.join("*"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Brings a list of rational functions over one common polynomial
/// denominator: `fs[i] * common == numerators[i]`, with every numerator
/// coefficient an integer.
pub fn clear_denominators(fs: &[RatFunc]) -> (ParamPoly, Vec<ParamPoly>) {
    let mut maps: Vec<BTreeMap<ParamPoly, u32>> = fs.iter().map(|f| f.den.clone()).collect();
    refine(&mut maps);
    let fs: Vec<RatFunc> = fs
        .iter()
        .zip(maps)
        .map(|(f, den)| RatFunc { num: f.num.clone(), den })
        .collect();
    let mut den: BTreeMap<ParamPoly, u32> = BTreeMap::new();
    for f in &fs {
        den = lcm_map(&den, &f.den);
    }
    let mut nums: Vec<ParamPoly> = fs.iter().map(|f| f.times_denominator(&den)).collect();
    let mut common = ParamPoly::one();
    for (f, &e) in &den {
        common = &common * &f.pow(e);
    }
    let mut scalar = num_bigint::BigInt::one();
    for p in &nums {
        for (_, c) in p.terms() {
            scalar = num_integer::Integer::lcm(&scalar, c.denom());
        }
    }
    if !scalar.is_one() {
        let s = Rational::from_integer(scalar);
        common = common.scale(&s);
        nums = nums.iter().map(|p| p.scale(&s)).collect();
    }
    (common, nums)
}

/// The distinct primitive denominator factors of a list of rational
/// functions.
pub fn denominator_factors<'a, I: IntoIterator<Item = &'a RatFunc>>(fs: I) -> Vec<ParamPoly> {
    let mut all = std::collections::BTreeSet::new();
    for f in fs {
        for (p, _) in f.denom_factors() {
            all.insert(p.clone());
        }
    }
    all.into_iter().collect()
}
