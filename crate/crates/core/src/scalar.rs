//! Coefficient fields.
//!
//! Every algorithm in this crate is generic over [`Scalar`], which is
//! implemented for exact rationals ([`Rational`]) and for `f64`. Exact mode
//! never rounds; float mode compares through a [`Tolerance`].

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational numbers with arbitrary precision.
pub type Rational = BigRational;

/// Absolute/relative tolerance used by float-mode comparisons.
///
/// Exact scalars ignore it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Tolerance {
    pub const fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Tolerance { abs_tol, rel_tol }
    }

    pub const fn absolute(abs_tol: f64) -> Self {
        Tolerance { abs_tol, rel_tol: 0.0 }
    }

    /// The same tolerance widened by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Tolerance { abs_tol: self.abs_tol * factor, rel_tol: self.rel_tol * factor }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_tol: 1e-9, rel_tol: 0.0 }
    }
}

/// A field of coefficients: exact rationals or floating point.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact comparison with zero. Used for pruning stored coefficients.
    fn is_zero(&self) -> bool;

    /// Zero up to `tol` (exact zero test for exact scalars).
    fn is_negligible(&self, tol: &Tolerance) -> bool;

    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool;

    fn to_f64(&self) -> f64;

    /// Exact for rationals, rounded for floats.
    fn from_rational(q: &Rational) -> Self;

    /// Exact rational value when one is available (always for rationals,
    /// by small-denominator recovery for floats).
    fn to_rational(&self) -> Option<Rational>;

    /// Nearest representable value. Exact scalars recover small-denominator
    /// rationals by continued fractions and return `None` otherwise.
    fn from_f64(v: f64) -> Option<Self>;

    fn abs(&self) -> Self;

    /// Sign of the value, `0` when negligible.
    fn sign(&self, tol: &Tolerance) -> i32;

    /// Real `n`-th root. Exact scalars only succeed on perfect powers; odd
    /// roots of negative numbers are allowed.
    fn nth_root(&self, n: u32) -> Option<Self>;

    fn sqrt(&self) -> Option<Self> {
        self.nth_root(2)
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn powi(&self, exp: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * self.clone();
        }
        if exp < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Text rendering used by reports: `p/q` for rationals.
    fn render(&self) -> String {
        self.to_string()
    }

    fn max_abs<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self {
        let mut best = Self::zero();
        for x in items {
            let a = x.abs();
            if greater(&a, &best) {
                best = a;
            }
        }
        best
    }
}

fn greater<S: Scalar>(a: &S, b: &S) -> bool {
    (a.clone() - b.clone()).sign(&Tolerance::absolute(0.0)) > 0
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negligible(&self, _tol: &Tolerance) -> bool {
        Zero::is_zero(self)
    }
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(v: f64) -> Option<Self> {
        rationalize(v, 1_000_000, 1e-10)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sign(&self, _tol: &Tolerance) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        if n == 0 {
            return None;
        }
        let negative = Signed::is_negative(self);
        if negative && n.is_multiple_of(2) {
            return None;
        }
        let num = self.numer().abs();
        let den = self.denom().clone();
        let rn = num.nth_root(n);
        let rd = den.nth_root(n);
        if num_traits::pow(rn.clone(), n as usize) != num || num_traits::pow(rd.clone(), n as usize) != den {
            return None;
        }
        let root = BigRational::new(rn, rd);
        Some(if negative { -root } else { root })
    }
    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            alloc::format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negligible(&self, tol: &Tolerance) -> bool {
        libm::fabs(*self) <= tol.abs_tol
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        let diff = libm::fabs(self - other);
        let scale = libm::fmax(libm::fabs(*self), libm::fabs(*other));
        diff <= tol.abs_tol + tol.rel_tol * scale
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Option<Self> {
        Some(v)
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<Rational> {
        rationalize(*self, 1_000_000, 1e-10)
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn sign(&self, tol: &Tolerance) -> i32 {
        if self.is_negligible(tol) {
            0
        } else if *self > 0.0 {
            1
        } else {
            -1
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        match n {
            0 => None,
            1 => Some(*self),
            2 if *self < 0.0 => None,
            2 => Some(libm::sqrt(*self)),
            _ if *self < 0.0 && n.is_multiple_of(2) => None,
            _ if *self < 0.0 => Some(-libm::pow(-*self, 1.0 / n as f64)),
            _ => Some(libm::pow(*self, 1.0 / n as f64)),
        }
    }
}

/// Best rational approximation of `v` with denominator at most `max_den`,
/// accepted only when within `tol` of `v`.
pub fn rationalize(v: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = libm::floor(x);
        if libm::fabs(a) > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let approx = h1 as f64 / k1 as f64;
        if libm::fabs(approx - v) <= tol * libm::fmax(1.0, libm::fabs(v)) {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = x - a;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

/// Parse `"p/q"`, an integer, or a decimal literal such as `"-0.25"` or
/// `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut all = String::from(int_part);
    all.push_str(frac_part);
    let n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Some(if negative { -value } else { value })
}

/// Conversion out of exact rationals into any scalar field.
pub fn from_rational<S: Scalar>(q: &Rational) -> S {
    S::from_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn exact_roots() {
        assert_eq!(q(4, 9).sqrt(), Some(q(2, 3)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-1, 512).nth_root(9), Some(q(-1, 2)));
        assert_eq!(q(-4, 1).sqrt(), None);
    }

    #[test]
    fn float_roots() {
        let r = (-512.0f64).nth_root(9).unwrap();
        assert!((r + 2.0).abs() < 1e-12);
    }

    #[test]
    fn rationalize_small_fractions() {
        assert_eq!(rationalize(0.5, 1000, 1e-12), Some(q(1, 2)));
        assert_eq!(rationalize(-15.0 / 6.0, 1000, 1e-12), Some(q(-5, 2)));
        assert_eq!(rationalize(core::f64::consts::SQRT_2, 1000, 1e-12), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_rational("1e-3"), Some(q(1, 1000)));
        assert_eq!(parse_rational("2.5E1"), Some(q(25, 1)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn rational_conversion_roundtrip() {
        let v: Rational = from_rational(&q(-7, 3));
        assert_eq!(v, q(-7, 3));
        let f: f64 = from_rational(&q(-7, 4));
        assert_eq!(f, -1.75);
    }

    #[test]
    fn render_forms() {
        assert_eq!(q(-15, 6).render(), "-5/2");
        assert_eq!(q(4, 2).render(), "2");
    }
}
