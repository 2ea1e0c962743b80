//! Scalar substrate: complex floating values, exact rationals, dual numbers.
//!
//! The arithmetic mode of a computation is chosen by the scalar type it is
//! instantiated with: [`C64`] for floating work, [`Q`] for exact polynomial
//! identity checks. Square roots in exact mode succeed only on perfect squares.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::multiset::MultiValue;

pub type C64 = Complex64;
pub type Q = BigRational;

/// Field operations shared by every scalar type, including [`Dual`].
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Exact test for the additive identity.
    fn is_zero(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

/// A scalar that can live in a public result: magnitude, roots, JSON.
pub trait Scalar: Field + Send + Sync + 'static {
    /// True for exact arithmetic (tolerances are treated as zero).
    const EXACT: bool;

    /// A square root, if one exists in this field.
    fn sqrt(&self) -> Option<Self>;
    fn magnitude(&self) -> f64;
    fn to_complex(&self) -> C64;
    fn is_finite(&self) -> bool;
    fn encode(&self) -> Value;
    fn decode(v: &Value) -> Result<Self>;
}

impl Field for C64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_complex(&self) -> C64 {
        *self
    }
    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn encode(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }
    fn decode(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .map(|re| Complex64::new(re, 0.0))
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::Array(a) if a.len() == 2 => {
                let part = |x: &Value| {
                    x.as_f64()
                        .ok_or_else(|| Error::Parse(format!("complex component {x} is not a number")))
                };
                Ok(Complex64::new(part(&a[0])?, part(&a[1])?))
            }
            Value::String(s) => {
                let q = parse_rational(s)?;
                Ok(Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0))
            }
            other => Err(Error::Parse(format!("expected [re, im], got {other}"))),
        }
    }
}

impl Field for Q {
    fn zero() -> Self {
        <BigRational as num_traits::Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as num_traits::One>::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl Scalar for Q {
    const EXACT: bool = true;

    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        // BigRational is kept reduced, so numerator and denominator must both be squares.
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn to_complex(&self) -> C64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_finite(&self) -> bool {
        true
    }
    /// Integers that fit `i64` become JSON numbers, everything else `"p/q"`.
    fn encode(&self) -> Value {
        if self.is_integer() {
            if let Some(i) = self.numer().to_i64() {
                return Value::from(i);
            }
        }
        Value::String(format_rational(self))
    }
    fn decode(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|i| Q::from_int(i))
                .ok_or_else(|| Error::Parse(format!("{n} is not an exact rational; use \"p/q\""))),
            other => Err(Error::Parse(format!("expected \"p/q\", got {other}"))),
        }
    }
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Q) -> String {
    if num_traits::One::is_one(q.denom()) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if num_traits::Zero::is_zero(&d) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Absolute and relative tolerance for floating comparisons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Tolerance { rel, abs }
    }

    /// `rel = abs = t`.
    pub const fn uniform(t: f64) -> Self {
        Tolerance { rel: t, abs: t }
    }

    pub const fn exact() -> Self {
        Tolerance { rel: 0.0, abs: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rel.is_finite() && self.abs.is_finite() && self.rel >= 0.0 && self.abs >= 0.0 {
            Ok(())
        } else {
            Err(Error::DomainError(format!("invalid tolerance {self:?}")))
        }
    }

    /// Mixed absolute/relative test on a pair of magnitudes.
    pub fn accepts(&self, diff: f64, scale: f64) -> bool {
        diff <= self.abs + self.rel * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::uniform(1e-9)
    }
}

/// `a == b` in exact mode, `|a - b| <= abs + rel * max(|a|, |b|)` otherwise.
pub fn close<S: Scalar>(a: &S, b: &S, tol: &Tolerance) -> bool {
    if S::EXACT {
        a == b
    } else {
        let diff = (a.clone() - b.clone()).magnitude();
        tol.accepts(diff, a.magnitude().max(b.magnitude()))
    }
}

/// True if `a` is zero (exact) or below the absolute tolerance.
pub fn negligible<S: Scalar>(a: &S, tol: &Tolerance) -> bool {
    if S::EXACT {
        Field::is_zero(a)
    } else {
        a.magnitude() <= tol.abs
    }
}

/// Both roots of `a z^2 + b z + c = 0`, with multiplicity.
///
/// Floating mode computes the larger-magnitude root first and the other from
/// the product `c / a`. Exact mode fails with [`Error::IrrationalRoots`] when
/// the discriminant is not a rational square.
pub fn solve_quadratic<S: Scalar>(a: &S, b: &S, c: &S) -> Result<MultiValue<S>> {
    if a.is_zero() {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let disc = b.square() - S::from_int(4) * a.clone() * c.clone();
    let root = disc.sqrt().ok_or(Error::IrrationalRoots)?;
    let two_a = S::from_int(2) * a.clone();
    if S::EXACT {
        let r1 = (root.clone() - b.clone()) / two_a.clone();
        let r2 = (-root - b.clone()) / two_a;
        return Ok(MultiValue::pair(r1, r2));
    }
    let (bc, rc) = (b.to_complex(), root.to_complex());
    let sign = if (bc.conj() * rc).re >= 0.0 { S::one() } else { -S::one() };
    let q = -(b.clone() + sign * root) / S::from_int(2);
    if q.is_zero() {
        // b = 0 and disc = 0, hence c = 0
        return Ok(MultiValue::pair(S::zero(), S::zero()));
    }
    let r1 = q.clone() / a.clone();
    let r2 = c.clone() / q;
    Ok(MultiValue::pair(r1, r2))
}

/// First-order dual number `value + eps * tangent`, used for exact
/// chain-rule derivatives of closed-form expressions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub value: C64,
    pub tangent: C64,
}

impl Dual {
    pub fn new(value: C64, tangent: C64) -> Self {
        Dual { value, tangent }
    }

    pub fn constant(value: C64) -> Self {
        Dual { value, tangent: <C64 as Field>::zero() }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.value + o.value, self.tangent + o.tangent)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.value - o.value, self.tangent - o.tangent)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.value * o.value, self.value * o.tangent + self.tangent * o.value)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        let inv = 1.0 / o.value;
        Dual::new(
            self.value * inv,
            (self.tangent * o.value - self.value * o.tangent) * inv * inv,
        )
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.value, -self.tangent)
    }
}

impl Field for Dual {
    fn zero() -> Self {
        Dual::constant(C64::zero())
    }
    fn one() -> Self {
        Dual::constant(C64::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Dual::constant(C64::from_ratio(num, den))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.tangent.is_zero()
    }
}

/// Lifts a complex constant into any field that can represent it.
pub trait FromComplex: Field {
    fn from_c64(z: C64) -> Self;
}

impl FromComplex for C64 {
    fn from_c64(z: C64) -> Self {
        z
    }
}

impl FromComplex for Dual {
    fn from_c64(z: C64) -> Self {
        Dual::constant(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiset::multiset_equal;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn quadratic_simple_roots() {
        let roots = solve_quadratic(&c(1.0, 0.0), &c(-3.0, 0.0), &c(2.0, 0.0)).unwrap();
        let want = MultiValue::pair(c(1.0, 0.0), c(2.0, 0.0));
        assert!(multiset_equal(&roots, &want, &Tolerance::default()).unwrap());
    }

    #[test]
    fn quadratic_double_root() {
        let x = c(0.3, -1.2);
        let roots = solve_quadratic(&C64::one(), &(x * -2.0), &(x * x)).unwrap();
        assert!(multiset_equal(&roots, &MultiValue::pair(x, x), &Tolerance::default()).unwrap());
        let xq = q(7, 3);
        let roots = solve_quadratic(&Q::one(), &(xq.clone() * q(-2, 1)), &xq.square()).unwrap();
        assert_eq!(roots.elements(), &[xq.clone(), xq]);
    }

    #[test]
    fn quadratic_imaginary_roots() {
        let roots = solve_quadratic(&C64::one(), &C64::zero(), &C64::one()).unwrap();
        let want = MultiValue::pair(c(0.0, 1.0), c(0.0, -1.0));
        assert!(multiset_equal(&roots, &want, &Tolerance::default()).unwrap());
    }

    #[test]
    fn quadratic_zero_leading_coefficient() {
        assert_eq!(
            solve_quadratic(&C64::zero(), &C64::one(), &C64::one()).unwrap_err(),
            Error::DegenerateLeadingCoefficient
        );
    }

    #[test]
    fn exact_quadratic_needs_square_discriminant() {
        let roots = solve_quadratic(&Q::one(), &q(-3, 1), &q(2, 1)).unwrap();
        assert!(multiset_equal(&roots, &MultiValue::pair(q(1, 1), q(2, 1)), &Tolerance::exact()).unwrap());
        assert_eq!(
            solve_quadratic(&Q::one(), &Q::zero(), &q(-2, 1)).unwrap_err(),
            Error::IrrationalRoots
        );
    }

    #[test]
    fn stable_root_for_small_constant_term() {
        // naive formula loses the small root entirely
        let roots = solve_quadratic(&C64::one(), &c(-1e8, 0.0), &C64::one()).unwrap();
        let small = roots.elements().iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
        assert!((small - 1e-8).abs() < 1e-20);
    }

    #[test]
    fn rational_sqrt_and_encoding() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-4, 1).sqrt(), None);
        assert_eq!(q(14, 6).encode(), Value::String("7/3".into()));
        assert_eq!(q(-2, 1).encode(), serde_json::json!(-2));
        assert_eq!(Q::decode(&Value::String("4/9".into())).unwrap(), q(4, 9));
        assert_eq!(Q::decode(&serde_json::json!(-1)).unwrap(), q(-1, 1));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn complex_encoding() {
        let z = c(1.5, -2.0);
        assert_eq!(z.encode(), serde_json::json!([1.5, -2.0]));
        assert_eq!(C64::decode(&z.encode()).unwrap(), z);
        assert_eq!(C64::decode(&serde_json::json!(3)).unwrap(), c(3.0, 0.0));
    }

    #[test]
    fn dual_quotient_rule() {
        // d/dx (x^2 + 1) / x at x = 2 is 1 - 1/x^2 = 3/4
        let x = Dual::new(c(2.0, 0.0), C64::one());
        let y = (x * x + Dual::one()) / x;
        assert!((y.value - c(2.5, 0.0)).norm() < 1e-15);
        assert!((y.tangent - c(0.75, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(f64::NAN, 0.0).validate().is_err());
        assert!(Tolerance::new(-1.0, 0.0).validate().is_err());
        assert!(Tolerance::default().validate().is_ok());
    }
}
