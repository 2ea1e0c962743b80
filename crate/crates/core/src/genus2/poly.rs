//! Dense complex polynomials with a thresholded Euclidean algorithm.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::C64;

/// Relative size below which a remainder is treated as exactly zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;
/// Relative size below which a nonzero remainder is too close to call.
pub const AMBIGUOUS_THRESHOLD: f64 = 1e-6;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(C64::new(1.0, 0.0))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// Largest coefficient magnitude.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut p = self.scale(self.leading().inv());
        *p.coeffs.last_mut().expect("nonzero") = C64::new(1.0, 0.0);
        p
    }

    /// Drops leading coefficients below `eps` relative to the largest one.
    pub fn trimmed(&self, eps: f64) -> Poly {
        let cut = eps * self.norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= cut) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.leading().inv();
        let mut quot = vec![C64::new(0.0, 0.0); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd] * lead_inv;
            quot[i] = q;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= q * dc;
            }
            rem[i + dd] = C64::new(0.0, 0.0);
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Classifies a remainder relative to `scale`: `Ok(true)` if it is zero,
/// `Ok(false)` if it is clearly nonzero, an error in the gray zone.
fn vanishes(r: &Poly, scale: f64) -> Result<bool> {
    let rel = r.norm() / scale.max(f64::MIN_POSITIVE);
    if rel <= ZERO_THRESHOLD {
        Ok(true)
    } else if rel <= AMBIGUOUS_THRESHOLD {
        Err(Error::NumericallySingular(format!("remainder of relative size {rel:e} in gcd")))
    } else {
        Ok(false)
    }
}

/// Monic `d = gcd(a, b)` with Bézout cofactors `d = s·a + t·b`.
pub fn xgcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
    let scale = a.norm().max(b.norm());
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    if r1.is_zero() || vanishes(&r1, scale)? {
        return normalize(r0, s0, t0);
    }
    loop {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, s0, t0) = (r1, s1, t1);
        if r.is_zero() || vanishes(&r, scale)? {
            return normalize(r0, s0, t0);
        }
        (r1, s1, t1) = (r, s, t);
    }
}

fn normalize(d: Poly, s: Poly, t: Poly) -> Result<(Poly, Poly, Poly)> {
    if d.is_zero() {
        return Err(Error::NumericallySingular("gcd of two zero polynomials".into()));
    }
    let k = d.leading().inv();
    Ok((d.monic(), s.scale(k), t.scale(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> Poly {
        Poly::new(v.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    #[test]
    fn division() {
        // (s² + 3s + 2) = (s + 1)(s + 2)
        let (q, r) = p(&[2.0, 3.0, 1.0]).div_rem(&p(&[1.0, 1.0]));
        assert_eq!(q, p(&[2.0, 1.0]));
        assert!(r.is_zero());
        let (q, r) = p(&[1.0, 0.0, 1.0]).div_rem(&p(&[0.0, 1.0]));
        assert_eq!((q, r), (p(&[0.0, 1.0]), p(&[1.0])));
    }

    #[test]
    fn gcd_finds_common_factor() {
        let a = &p(&[-1.0, 1.0]) * &p(&[2.0, 1.0]);
        let b = &p(&[-1.0, 1.0]) * &p(&[5.0, 1.0]);
        let (d, s, t) = xgcd(&a, &b).unwrap();
        assert!((&d - &p(&[-1.0, 1.0])).norm() < 1e-12);
        assert!((&(&(&s * &a) + &(&t * &b)) - &d).norm() < 1e-12);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let (d, s, t) = xgcd(&p(&[2.0, 3.0, 1.0]), &p(&[-3.0, 1.0])).unwrap();
        assert_eq!(d, Poly::one());
        let a = p(&[2.0, 3.0, 1.0]);
        let b = p(&[-3.0, 1.0]);
        assert!((&(&(&s * &a) + &(&t * &b)) - &Poly::one()).norm() < 1e-12);
    }

    #[test]
    fn near_common_root_is_ambiguous() {
        let a = p(&[-1.0, 1.0]);
        let b = p(&[-1.0 - 1e-8, 1.0]);
        assert!(matches!(xgcd(&a, &b), Err(Error::NumericallySingular(_))));
    }

    #[test]
    fn gcd_with_zero() {
        let (d, s, t) = xgcd(&p(&[4.0, 2.0]), &Poly::zero()).unwrap();
        assert_eq!(d, p(&[2.0, 1.0]));
        assert_eq!(s, p(&[0.5]));
        assert!(t.is_zero());
    }
}
