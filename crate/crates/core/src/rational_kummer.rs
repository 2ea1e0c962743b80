//! The elementary two-valued group on `C²/±` embedded in the quadric
//! `x₁x₃ = x₂²`, its deformation into the rational limit of a genus-2 Kummer
//! surface, and the closed-form genus-2 data of that limit.
//!
//! Coordinate orders differ on purpose: [`quadric_embed`] and the quadric law
//! use `(X₂, X₄, X₆) = (u₁², u₁u₂, u₂²)`; hat triples are always
//! `(X̂₂, X̂₄, X̂₆) = (-u₁², 2u₁u₃ + u₁⁴/3, σ₀²)`; and [`pi_k`] returns the
//! reversed order `(σ₀², 2u₁u₃ + u₁⁴/3, -u₁²)`.

use std::marker::PhantomData;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::law::NValuedLaw;
use crate::multiset::{Encode, MultiValue};
use crate::scalar::{close, negligible, solve_quadratic, Scalar, Tolerance};

/// A point `u = (u₁, u₃)` of `C²`.
#[derive(Debug, Clone, PartialEq)]
pub struct UPoint<S> {
    pub u1: S,
    pub u3: S,
}

impl<S: Scalar> UPoint<S> {
    pub fn new(u1: S, u3: S) -> Self {
        UPoint { u1, u3 }
    }

    pub fn zero() -> Self {
        UPoint { u1: S::zero(), u3: S::zero() }
    }

    pub fn add(&self, o: &Self) -> Self {
        UPoint { u1: self.u1.clone() + o.u1.clone(), u3: self.u3.clone() + o.u3.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        UPoint { u1: self.u1.clone() - o.u1.clone(), u3: self.u3.clone() - o.u3.clone() }
    }
}

impl<S: Scalar> Encode for UPoint<S> {
    fn encode_json(&self) -> Value {
        json!([self.u1.encode(), self.u3.encode()])
    }
}

/// `(u₁², u₁u₂, u₂²)`, a point of the quadric.
pub fn quadric_embed<S: Scalar>(u: &UPoint<S>) -> [S; 3] {
    [u.u1.square(), u.u1.clone() * u.u3.clone(), u.u3.square()]
}

fn quadric_residual<S: Scalar>(p: &[S; 3]) -> (f64, f64) {
    let lhs = p[0].clone() * p[2].clone();
    let rhs = p[1].square();
    ((lhs.clone() - rhs.clone()).magnitude(), lhs.magnitude().max(rhs.magnitude()))
}

/// The quadric constraint alone leaves the sign of the middle coordinate
/// open when `x₁ + y₁ = 0`. Writing a candidate as `x + y + (2P, T, 2R)`,
/// the true products also satisfy the sign-invariant relations
/// `PR = x₁y₁`, `PT = x₀y₁ + x₁y₀`, `RT = x₁y₂ + x₂y₁`.
fn product_residual<S: Scalar>(x: &[S; 3], y: &[S; 3], t: &[S; 3]) -> (f64, f64) {
    let (d, scale) = quadric_residual(t);
    let half = S::from_ratio(1, 2);
    let p = half.clone() * (t[0].clone() - x[0].clone() - y[0].clone());
    let r = half * (t[2].clone() - x[2].clone() - y[2].clone());
    let m = t[1].clone() - x[1].clone() - y[1].clone();
    let pairs = [
        (p.clone() * r.clone(), x[1].clone() * y[1].clone()),
        (p * m.clone(), x[0].clone() * y[1].clone() + x[1].clone() * y[0].clone()),
        (r * m, x[1].clone() * y[2].clone() + x[2].clone() * y[1].clone()),
    ];
    pairs.into_iter().fold((d, scale), |(d, scale), (lhs, rhs)| {
        let diff = (lhs.clone() - rhs.clone()).magnitude();
        (d.max(diff), scale.max(lhs.magnitude()).max(rhs.magnitude()))
    })
}

/// Roots of `z² - bz + c = 0` given the sum `b` and product `c`.
fn roots_from_vieta<S: Scalar>(b: S, c: S) -> Result<MultiValue<S>> {
    solve_quadratic(&S::one(), &-b, &c)
}

/// Splits three root pairs into two triples, choosing the pairing whose
/// worse triple has the smallest residual under `residual`.
fn select_pairing<S: Scalar>(
    roots: [MultiValue<S>; 3],
    residual: impl Fn(&[S; 3]) -> (f64, f64),
    tol: &Tolerance,
) -> Result<MultiValue<[S; 3]>> {
    let [r0, r1, r2] = roots.map(|m| m.into_elements());
    let mut best: Option<(f64, bool, [[S; 3]; 2])> = None;
    for i in 0..2 {
        for j in 0..2 {
            let a = [r0[0].clone(), r1[i].clone(), r2[j].clone()];
            let b = [r0[1].clone(), r1[1 - i].clone(), r2[1 - j].clone()];
            let (da, sa) = residual(&a);
            let (db, sb) = residual(&b);
            let ok = tol.accepts(da, sa) && tol.accepts(db, sb);
            let score = (da / sa.max(1.0)).max(db / sb.max(1.0));
            let better = match &best {
                None => true,
                Some((s, was_ok, _)) => (ok && !was_ok) || (ok == *was_ok && score < *s),
            };
            if better {
                best = Some((score, ok, [a, b]));
            }
        }
    }
    match best {
        Some((_, true, [a, b])) => Ok(MultiValue::pair(a, b)),
        Some((score, false, _)) => Err(Error::PairingSelectionFailed { residual: score }),
        None => unreachable!("four candidate pairings"),
    }
}

/// Product on the quadric: each coordinate pair solves its own quadratic and
/// the constraint `X₂X₆ = X₄²` selects how they assemble into two triples.
pub fn eg_mul<S: Scalar>(x: &[S; 3], y: &[S; 3], tol: &Tolerance) -> Result<MultiValue<[S; 3]>> {
    let two = S::from_int(2);
    let outer = |i: usize| {
        roots_from_vieta(two.clone() * (x[i].clone() + y[i].clone()), (x[i].clone() - y[i].clone()).square())
    };
    let middle = roots_from_vieta(
        two.clone() * (x[1].clone() + y[1].clone()),
        (x[0].clone() - y[0].clone()) * (x[2].clone() - y[2].clone()),
    )?;
    select_pairing([outer(0)?, middle, outer(2)?], |t| product_residual(x, y, t), tol)
}

/// `σ₀(u) = u₃ - u₁³/3`.
pub fn sigma0<S: Scalar>(u: &UPoint<S>) -> S {
    u.u3.clone() - u.u1.powi(3) / S::from_int(3)
}

/// `(σ₀², 2u₁u₃ + u₁⁴/3, -u₁²)`.
pub fn pi_k<S: Scalar>(u: &UPoint<S>) -> [S; 3] {
    let [x2, x4, x6] = hat_embed(u);
    [x6, x4, x2]
}

/// `(X̂₂, X̂₄, X̂₆) = (-u₁², 2u₁u₃ + u₁⁴/3, σ₀²)`.
pub fn hat_embed<S: Scalar>(u: &UPoint<S>) -> [S; 3] {
    let x2 = -u.u1.square();
    let x4 = S::from_int(2) * u.u1.clone() * u.u3.clone() + u.u1.powi(4) / S::from_int(3);
    [x2, x4, sigma0(u).square()]
}

/// Quadric coordinates to hat coordinates.
pub fn hat_forward<S: Scalar>(p: &[S; 3]) -> [S; 3] {
    let [x2, x4, x6] = p.clone();
    let third = S::from_ratio(1, 3);
    [
        -x2.clone(),
        S::from_int(2) * x4.clone() + third * x2.square(),
        x6 - S::from_ratio(2, 3) * x2.clone() * x4 + S::from_ratio(1, 9) * x2.powi(3),
    ]
}

/// Inverse of [`hat_forward`].
pub fn hat_inverse<S: Scalar>(p: &[S; 3]) -> [S; 3] {
    let [h2, h4, h6] = p.clone();
    let third = S::from_ratio(1, 3);
    [
        -h2.clone(),
        S::from_ratio(1, 2) * (h4.clone() - third.clone() * h2.square()),
        h6 - third * h2.clone() * h4 + S::from_ratio(2, 9) * h2.powi(3),
    ]
}

fn quartic_terms<S: Scalar>(p: &[S; 3], coeffs: [i64; 4]) -> [S; 4] {
    let [h2, h4, h6] = p.clone();
    [
        S::from_int(coeffs[0]) * h4.square(),
        S::from_int(coeffs[1]) * h2.clone() * h6,
        S::from_int(coeffs[2]) * h2.square() * h4,
        S::from_int(coeffs[3]) * h2.powi(4),
    ]
}

const DERIVED_QUARTIC: [i64; 4] = [1, 4, -2, 1];
const PRINTED_QUARTIC: [i64; 4] = [-9, -36, 12, 7];

/// `X̂₄² + 4X̂₂X̂₆ - 2X̂₂²X̂₄ + X̂₂⁴`, vanishing exactly on the rational Kummer surface.
pub fn kummer_quartic_eval<S: Scalar>(p: &[S; 3]) -> S {
    quartic_terms(p, DERIVED_QUARTIC).into_iter().fold(S::zero(), |a, b| a + b)
}

/// The alternative quartic `-9X̂₄² - 36X̂₂X̂₆ + 12X̂₂²X̂₄ + 7X̂₂⁴`, which does
/// not vanish on the surface; kept for the discrepancy record.
pub fn printed_quartic_eval<S: Scalar>(p: &[S; 3]) -> S {
    quartic_terms(p, PRINTED_QUARTIC).into_iter().fold(S::zero(), |a, b| a + b)
}

fn quartic_residual<S: Scalar>(p: &[S; 3]) -> (f64, f64) {
    let terms = quartic_terms(p, DERIVED_QUARTIC);
    let scale = terms.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    (terms.into_iter().fold(S::zero(), |a, b| a + b).magnitude(), scale)
}

/// A preimage `u` of a hat triple, determined up to sign.
pub fn hat_lift<S: Scalar>(p: &[S; 3], tol: &Tolerance) -> Result<UPoint<S>> {
    let [h2, h4, h6] = p.clone();
    let u1 = (-h2.clone())
        .sqrt()
        .ok_or_else(|| Error::LiftFailed(format!("-X2 = {} has no square root", (-h2).encode())))?;
    let u3 = if negligible(&u1, tol) || u1.is_zero() {
        if !negligible(&h4, tol) {
            return Err(Error::LiftFailed("X2 = 0 forces X4 = 0".into()));
        }
        let root = h6.sqrt().ok_or_else(|| Error::LiftFailed(format!("X6 = {} has no square root", h6.encode())))?;
        return Ok(UPoint::new(S::zero(), root));
    } else {
        (h4 - u1.powi(4) / S::from_int(3)) / (S::from_int(2) * u1.clone())
    };
    let u = UPoint::new(u1, u3);
    if !close(&sigma0(&u).square(), &h6, tol) {
        return Err(Error::LiftFailed("point is off the rational Kummer surface".into()));
    }
    Ok(u)
}

/// `(X̂₄⁺, X̂₄⁻)`: half the sum and half the difference of `X̂₄(u + v)` and `X̂₄(u - v)`.
pub fn x4_split<S: Scalar>(u: &UPoint<S>, v: &UPoint<S>) -> (S, S) {
    let (a, b, c, d) = (u.u1.clone(), u.u3.clone(), v.u1.clone(), v.u3.clone());
    let two = S::from_int(2);
    let plus = two.clone() * (a.clone() * b.clone() + c.clone() * d.clone())
        + (a.powi(4) + S::from_int(6) * a.square() * c.square() + c.powi(4)) / S::from_int(3);
    let minus = two * (c.clone() * b + a.clone() * d)
        + S::from_ratio(4, 3) * a.clone() * c.clone() * (a.square() + c.square());
    (plus, minus)
}

/// Two-valued product on the rational Kummer surface in hat coordinates.
///
/// The `X̂₂` pair solves `z² - 2(x̂₂ + ŷ₂)z + (x̂₂ - ŷ₂)² = 0`; the `X̂₄` and
/// `X̂₆` pairs solve quadratics whose coefficients are computed from lifted
/// preimages; the three pairs are assembled by quartic membership.
pub fn rk_mul<S: Scalar>(x: &[S; 3], y: &[S; 3], tol: &Tolerance) -> Result<MultiValue<[S; 3]>> {
    let u = hat_lift(x, tol)?;
    let v = hat_lift(y, tol)?;
    let two = S::from_int(2);
    let first = roots_from_vieta(two.clone() * (x[0].clone() + y[0].clone()), (x[0].clone() - y[0].clone()).square())?;
    let (plus, minus) = x4_split(&u, &v);
    let second = roots_from_vieta(two * plus.clone(), plus.square() - minus.square())?;
    let (s_plus, s_minus) = (sigma0(&u.add(&v)).square(), sigma0(&u.sub(&v)).square());
    let third = roots_from_vieta(s_plus.clone() + s_minus.clone(), s_plus * s_minus)?;
    select_pairing([first, second, third], quartic_residual, tol)
}

/// The quadric two-valued group; unit `(0, 0, 0)`, inverse the identity.
#[derive(Debug, Clone, Copy)]
pub struct QuadricLaw<S> {
    pub tol: Tolerance,
    marker: PhantomData<S>,
}

impl<S> QuadricLaw<S> {
    pub fn new(tol: Tolerance) -> Self {
        QuadricLaw { tol, marker: PhantomData }
    }
}

impl<S: Scalar> NValuedLaw for QuadricLaw<S> {
    type Elem = [S; 3];

    fn name(&self) -> String {
        "eg".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &[S; 3], y: &[S; 3]) -> Result<MultiValue<[S; 3]>> {
        eg_mul(x, y, &self.tol)
    }
    fn unit(&self) -> [S; 3] {
        [S::zero(), S::zero(), S::zero()]
    }
    fn inverse(&self, x: &[S; 3]) -> [S; 3] {
        x.clone()
    }
}

/// The rational Kummer two-valued group in hat coordinates; unit `(0, 0, 0)`.
#[derive(Debug, Clone, Copy)]
pub struct RationalKummerLaw<S> {
    pub tol: Tolerance,
    marker: PhantomData<S>,
}

impl<S> RationalKummerLaw<S> {
    pub fn new(tol: Tolerance) -> Self {
        RationalKummerLaw { tol, marker: PhantomData }
    }
}

impl<S: Scalar> NValuedLaw for RationalKummerLaw<S> {
    type Elem = [S; 3];

    fn name(&self) -> String {
        "rk".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &[S; 3], y: &[S; 3]) -> Result<MultiValue<[S; 3]>> {
        rk_mul(x, y, &self.tol)
    }
    fn unit(&self) -> [S; 3] {
        [S::zero(), S::zero(), S::zero()]
    }
    fn inverse(&self, x: &[S; 3]) -> [S; 3] {
        x.clone()
    }
}

fn nonzero_sigma<S: Scalar>(u: &UPoint<S>, tol: &Tolerance) -> Result<S> {
    let s = sigma0(u);
    if negligible(&s, tol) {
        return Err(Error::ThetaDivisor);
    }
    Ok(s)
}

/// Limits `(℘₁₁, ℘₁₃, ℘₃₃)` at `λ = 0`.
pub fn wp0<S: Scalar>(u: &UPoint<S>, tol: &Tolerance) -> Result<[S; 3]> {
    let s = nonzero_sigma(u, tol)?;
    let s2 = s.square();
    let u1 = u.u1.clone();
    Ok([
        (S::from_int(2) * u1.clone() * s + u1.powi(4)) / s2.clone(),
        -u1.square() / s2.clone(),
        S::one() / s2,
    ])
}

/// `σ₀²·(℘₃₃, ℘₁₃, ℘₁₁, 1) = (1, -u₁², 2u₁u₃ + u₁⁴/3, σ₀²)`, the Kummer
/// coordinates of the rational limit with their absolute scale.
pub fn kummer_vector0<S: Scalar>(u: &UPoint<S>) -> [S; 4] {
    let [h2, h4, h6] = hat_embed(u);
    [S::one(), h2, h4, h6]
}

/// Rational-limit divisor data `[(ŝ₁, μ̂₁), (ŝ₂, μ̂₂)]` with `ŝ = σ₀²s` and
/// `μ̂ = σ₀⁵μ`, so that `μ̂² = ŝ⁵`.
pub fn kowalevski_rational<S: Scalar>(u: &UPoint<S>, tol: &Tolerance) -> Result<[(S, S); 2]> {
    let s = nonzero_sigma(u, tol)?;
    let s2 = s.square();
    let (u1, u3) = (u.u1.clone(), u.u3.clone());
    let b = S::from_int(2) * u1.clone() * (u3.clone() + u1.powi(3) / S::from_int(6));
    let roots = solve_quadratic(&S::one(), &-b, &(u1.square() * s2.clone()))?;
    let slope = u3.square() + S::from_ratio(7, 3) * u1.powi(3) * u3.clone() + u1.powi(6) / S::from_int(9);
    let offset = u1.clone() * (u3 + S::from_ratio(2, 3) * u1.powi(3)) * s2;
    let point = |sh: &S| (sh.clone(), slope.clone() * sh.clone() - offset.clone());
    let [r1, r2] = [&roots.elements()[0], &roots.elements()[1]];
    Ok([point(r1), point(r2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::law::{check_associativity, check_inverse, check_unit};
    use crate::multiset::multiset_equal;
    use crate::scalar::{Field, C64, Q};
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn u(a: i64, b: i64) -> UPoint<Q> {
        UPoint::new(q(a, 1), q(b, 1))
    }

    fn triples(v: [[Q; 3]; 2]) -> MultiValue<[Q; 3]> {
        let [a, b] = v;
        MultiValue::pair(a, b)
    }

    #[test]
    fn eg_worked_example() {
        let r = eg_mul(&quadric_embed(&u(1, 1)), &quadric_embed(&u(2, 1)), &Tolerance::exact()).unwrap();
        let expected = triples([[q(9, 1), q(6, 1), q(4, 1)], [q(1, 1), q(0, 1), q(0, 1)]]);
        assert!(multiset_equal(&r, &expected, &Tolerance::exact()).unwrap());
    }

    #[test]
    fn eg_unit_and_square() {
        let x = quadric_embed(&u(3, -2));
        let law = QuadricLaw::<Q>::new(Tolerance::exact());
        assert!(check_unit(&law, &x, &Tolerance::exact()).unwrap().passed());
        let sq = eg_mul(&x, &x, &Tolerance::exact()).unwrap();
        let four = x.clone().map(|c| c * q(4, 1));
        assert!(multiset_equal(&sq, &triples([four, law.unit()]), &Tolerance::exact()).unwrap());
    }

    #[test]
    fn pi_k_values() {
        assert_eq!(pi_k(&u(0, 5)), [q(25, 1), q(0, 1), q(0, 1)]);
        assert_eq!(pi_k(&u(1, 1)), [q(4, 9), q(7, 3), q(-1, 1)]);
        assert_eq!(pi_k(&UPoint::new(q(3, 1), q(9, 1)))[0], Q::zero());
        assert_eq!(sigma0(&u(1, 1)), q(2, 3));
    }

    #[test]
    fn hat_values_and_quartics() {
        let h = hat_forward(&[q(1, 1), q(1, 1), q(1, 1)]);
        assert_eq!(h, [q(-1, 1), q(7, 3), q(4, 9)]);
        assert_eq!(hat_forward(&[Q::zero(), Q::zero(), Q::zero()]), [Q::zero(), Q::zero(), Q::zero()]);
        assert_eq!(kummer_quartic_eval(&h), Q::zero());
        assert_eq!(printed_quartic_eval(&h), q(2, 1));
        assert_eq!(kummer_quartic_eval(&[Q::zero(), Q::zero(), q(7, 2)]), Q::zero());
    }

    #[test]
    fn wp0_identities() {
        let p = UPoint::new(q(3, 2), q(-1, 4));
        let s2 = sigma0(&p).square();
        let [w11, w13, w33] = wp0(&p, &Tolerance::exact()).unwrap();
        assert_eq!(s2.clone() * w33, Q::one());
        assert_eq!(s2.clone() * w13, -p.u1.square());
        assert_eq!(s2 * w11, hat_embed(&p)[1]);
        assert_eq!(wp0(&UPoint::new(q(3, 1), q(9, 1)), &Tolerance::exact()).unwrap_err(), Error::ThetaDivisor);
    }

    #[test]
    fn rk_worked_example_matches_the_quadric_law() {
        let (a, b) = (u(1, 1), u(2, 1));
        let tol = Tolerance::exact();
        let r = rk_mul(&hat_embed(&a), &hat_embed(&b), &tol).unwrap();
        let eg = eg_mul(&quadric_embed(&a), &quadric_embed(&b), &tol).unwrap().map(|t| hat_forward(&t));
        assert!(multiset_equal(&r, &eg, &tol).unwrap());
        let expected = triples([hat_embed(&a.add(&b)), hat_embed(&a.sub(&b))]);
        assert!(multiset_equal(&r, &expected, &tol).unwrap());
    }

    #[test]
    fn rk_unit_square_and_inverse() {
        let law = RationalKummerLaw::<Q>::new(Tolerance::exact());
        let x = hat_embed(&UPoint::new(q(-3, 2), q(5, 3)));
        assert!(check_unit(&law, &x, &Tolerance::exact()).unwrap().passed());
        assert!(check_inverse(&law, &x, &Tolerance::exact()).unwrap().passed());
        let sq = rk_mul(&x, &x, &Tolerance::exact()).unwrap();
        let double = hat_embed(&UPoint::new(q(-3, 1), q(10, 3)));
        assert!(multiset_equal(&sq, &triples([double, law.unit()]), &Tolerance::exact()).unwrap());
    }

    #[test]
    fn rk_lift_failure() {
        // X̂₂ = -2 needs √2
        assert!(matches!(hat_lift(&[q(-2, 1), q(0, 1), q(1, 1)], &Tolerance::exact()), Err(Error::LiftFailed(_))));
        // off the surface
        assert!(matches!(hat_lift(&[q(-1, 1), q(7, 3), q(1, 1)], &Tolerance::exact()), Err(Error::LiftFailed(_))));
    }

    #[test]
    fn kowalevski_particular_cases() {
        let tol = Tolerance::new(1e-12, 1e-12);
        let c = |re: f64, im: f64| C64::new(re, im);
        let u1 = c(0.8, -0.3);
        // u₁ = 0
        let r = kowalevski_rational(&UPoint::new(C64::zero(), c(1.5, 0.2)), &tol).unwrap();
        assert!(r.iter().all(|(s, m)| s.norm() == 0.0 && m.norm() == 0.0));
        // u₃ = 0
        let r = kowalevski_rational(&UPoint::new(u1, C64::zero()), &tol).unwrap();
        let r3 = 3f64.sqrt();
        let s_exp = [c(1.0, r3) * u1.powi(4) / 6.0, c(1.0, -r3) * u1.powi(4) / 6.0];
        let m_exp = [c(-1.0, 1.0 / r3) * u1.powi(10) / 18.0, c(-1.0, -1.0 / r3) * u1.powi(10) / 18.0];
        let got = MultiValue::pair([r[0].0, r[0].1], [r[1].0, r[1].1]);
        let want = MultiValue::pair([s_exp[0], m_exp[0]], [s_exp[1], m_exp[1]]);
        assert!(multiset_equal(&got, &want, &tol).unwrap());
        // u₃ = -2u₁³/3
        let r = kowalevski_rational(&UPoint::new(u1, -u1.powi(3) * 2.0 / 3.0), &tol).unwrap();
        let want = MultiValue::pair(
            [c(-1.0, r3) * u1.powi(4) / 2.0, -(c(-1.0, r3) * u1.powi(4) / 2.0) * u1.powi(6)],
            [c(-1.0, -r3) * u1.powi(4) / 2.0, -(c(-1.0, -r3) * u1.powi(4) / 2.0) * u1.powi(6)],
        );
        let got = MultiValue::pair([r[0].0, r[0].1], [r[1].0, r[1].1]);
        assert!(multiset_equal(&got, &want, &tol).unwrap());
        // u₃ = u₁³/12, exact
        let p = UPoint::new(q(2, 1), q(8, 12));
        let r = kowalevski_rational(&p, &Tolerance::exact()).unwrap();
        for (s, m) in r {
            assert_eq!(s, q(16, 4));
            assert_eq!(m, q(1024, 32));
        }
    }

    #[test]
    fn kowalevski_printed_check_identities() {
        let r3 = 3f64.sqrt();
        let lhs = C64::new(-1.0, 1.0 / r3).powi(2) / 324.0;
        let rhs = C64::new(1.0, r3).powi(5) / 7776.0;
        assert!((lhs - rhs).norm() < 1e-12);
        for sign in [1.0, -1.0] {
            assert!((C64::new(-1.0, sign * r3).powi(3) - 8.0).norm() < 1e-12);
        }
    }

    fn rational() -> impl Strategy<Value = Q> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
    }

    fn upoint() -> impl Strategy<Value = UPoint<Q>> {
        (rational(), rational()).prop_map(|(a, b)| UPoint::new(a, b))
    }

    proptest! {
        #[test]
        fn quartic_vanishes_on_images(p in upoint()) {
            prop_assert_eq!(kummer_quartic_eval(&hat_embed(&p)), Q::zero());
            prop_assert_eq!(hat_forward(&quadric_embed(&p)), hat_embed(&p));
        }

        #[test]
        fn hat_round_trip(a in rational(), b in rational(), c in rational()) {
            let t = [a, b, c];
            prop_assert_eq!(hat_inverse(&hat_forward(&t)), t.clone());
            prop_assert_eq!(hat_forward(&hat_inverse(&t)), t);
        }

        #[test]
        fn eg_outputs_lie_on_the_quadric(a in upoint(), b in upoint()) {
            let r = eg_mul(&quadric_embed(&a), &quadric_embed(&b), &Tolerance::exact()).unwrap();
            for t in r.iter() {
                prop_assert_eq!(t[0].clone() * t[2].clone(), t[1].square());
            }
            let expected = MultiValue::pair(quadric_embed(&a.add(&b)), quadric_embed(&a.sub(&b)));
            prop_assert!(multiset_equal(&r, &expected, &Tolerance::exact()).unwrap());
        }

        #[test]
        fn rk_matches_parametrization(a in upoint(), b in upoint(), c in upoint()) {
            let tol = Tolerance::exact();
            let r = rk_mul(&hat_embed(&a), &hat_embed(&b), &tol).unwrap();
            let expected = MultiValue::pair(hat_embed(&a.add(&b)), hat_embed(&a.sub(&b)));
            prop_assert!(multiset_equal(&r, &expected, &tol).unwrap());
            let law = RationalKummerLaw::<Q>::new(tol);
            let rep = check_associativity(&law, &hat_embed(&a), &hat_embed(&b), &hat_embed(&c), &tol).unwrap();
            prop_assert!(rep.passed());
        }
    }
}
