//! The two-valued coset group on CP¹ coming from an elliptic curve
//! `t² = 4s³ - g₂s - g₃` modulo `t ↦ -t`.
//!
//! A class `[u]` is the point `(x₁ : x₂)` with affine coordinate
//! `s = x₂ / x₁ = ℘(u)`; the unit `u = 0` is `(0 : 1)`. The product of two
//! points is the binary quadratic form `z₁t₁² + z₂t₁t₂ + z₃t₂²`, whose two
//! linear factors `t₁ + s t₂` are the classes `[u + v]` and `[u - v]`.

use crate::error::{Error, Result};
use crate::law::NValuedLaw;
use crate::multiset::MultiValue;
use crate::proj::ProjPoint;
use crate::scalar::{close, solve_quadratic, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub struct CurveG1<S> {
    pub g2: S,
    pub g3: S,
}

impl<S: Scalar> CurveG1<S> {
    pub fn new(g2: S, g3: S) -> Self {
        CurveG1 { g2, g3 }
    }

    /// `4s³ - g₂s - g₃`.
    pub fn rhs(&self, s: &S) -> S {
        S::from_int(4) * s.powi(3) - self.g2.clone() * s.clone() - self.g3.clone()
    }

    /// `g₂³ - 27g₃²`; zero exactly for singular curves.
    pub fn discriminant(&self) -> S {
        self.g2.powi(3) - S::from_int(27) * self.g3.square()
    }

    pub fn contains(&self, p: &PointG1<S>, tol: &Tolerance) -> bool {
        close(&p.t.square(), &self.rhs(&p.s), tol)
    }
}

/// Affine point `(s, t) = (℘(u), ℘′(u))`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointG1<S> {
    pub s: S,
    pub t: S,
}

impl<S: Scalar> PointG1<S> {
    pub fn new(s: S, t: S) -> Self {
        PointG1 { s, t }
    }

    /// Validates curve membership.
    pub fn on_curve(s: S, t: S, curve: &CurveG1<S>, tol: &Tolerance) -> Result<Self> {
        let p = PointG1 { s, t };
        if !curve.contains(&p, tol) {
            let residual = (p.t.square() - curve.rhs(&p.s)).magnitude();
            return Err(Error::OffCurve { residual });
        }
        Ok(p)
    }

    pub fn negate(&self) -> Self {
        PointG1 { s: self.s.clone(), t: -self.t.clone() }
    }
}

fn line_coords<S: Scalar>(p: &ProjPoint<S>) -> Result<(S, S)> {
    match p.coords() {
        [a, b] => Ok((a.clone(), b.clone())),
        c => Err(Error::DimensionMismatch { left: c.len(), right: 2 }),
    }
}

/// Coefficients `(z₁ : z₂ : z₃)` of the product form of `x` and `y`.
pub fn cp1_mul<S: Scalar>(x: &ProjPoint<S>, y: &ProjPoint<S>, curve: &CurveG1<S>) -> Result<ProjPoint<S>> {
    let (x1, x2) = line_coords(x)?;
    let (y1, y2) = line_coords(y)?;
    let two = S::from_int(2);
    let quarter_g2 = curve.g2.clone() / S::from_int(4);
    let p11 = x1.clone() * y1.clone();
    let p22 = x2.clone() * y2.clone();
    let cross = x1.clone() * y2.clone() + x2.clone() * y1.clone();
    let z1 = (x1 * y2 - x2 * y1).square();
    let z2 = two.clone()
        * (cross.clone() * (p22.clone() - quarter_g2.clone() * p11.clone())
            - curve.g3.clone() / two * p11.square());
    let z3 = (p22 + quarter_g2 * p11.clone()).square() + curve.g3.clone() * p11 * cross;
    ProjPoint::new(vec![z1, z2, z3])
}

/// The two points `(a : b)` with `z₁b² - z₂ab + z₃a² = 0`, i.e. the linear
/// factors `a t₁ + b t₂` of `z₁t₁² + z₂t₁t₂ + z₃t₂²` up to scale.
///
/// Roots are taken in whichever chart has the larger leading coefficient, so
/// points at `s = ∞` come out as `(0 : 1)` rather than as overflow.
pub fn form_roots<S: Scalar>(z: &ProjPoint<S>) -> Result<MultiValue<ProjPoint<S>>> {
    let [z1, z2, z3] = match z.coords() {
        [a, b, c] => [a.clone(), b.clone(), c.clone()],
        c => return Err(Error::DimensionMismatch { left: c.len(), right: 3 }),
    };
    if z1.is_zero() && z3.is_zero() {
        return Ok(MultiValue::pair(ProjPoint::new(vec![S::one(), S::zero()])?, ProjPoint::new(vec![S::zero(), S::one()])?));
    }
    if z1.magnitude() >= z3.magnitude() && !z1.is_zero() {
        let roots = solve_quadratic(&z1, &-z2, &z3)?;
        let pts = roots.into_elements().into_iter().map(|s| ProjPoint::new(vec![S::one(), s])).collect::<Result<_>>()?;
        MultiValue::new(pts)
    } else {
        let roots = solve_quadratic(&z3, &-z2, &z1)?;
        let pts = roots.into_elements().into_iter().map(|r| ProjPoint::new(vec![r, S::one()])).collect::<Result<_>>()?;
        MultiValue::new(pts)
    }
}

/// The coset law on CP¹ as a two-valued group; unit `(0 : 1)`, inverse the identity.
#[derive(Debug, Clone)]
pub struct Cp1Law<S> {
    pub curve: CurveG1<S>,
}

impl<S: Scalar> Cp1Law<S> {
    pub fn new(curve: CurveG1<S>) -> Self {
        Cp1Law { curve }
    }
}

impl<S: Scalar> NValuedLaw for Cp1Law<S> {
    type Elem = ProjPoint<S>;

    fn name(&self) -> String {
        "cp1".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &ProjPoint<S>, y: &ProjPoint<S>) -> Result<MultiValue<ProjPoint<S>>> {
        form_roots(&cp1_mul(x, y, &self.curve)?)
    }
    fn unit(&self) -> ProjPoint<S> {
        ProjPoint::new(vec![S::zero(), S::one()]).expect("nonzero")
    }
    fn inverse(&self, x: &ProjPoint<S>) -> ProjPoint<S> {
        x.clone()
    }
}

fn chord_gap<S: Scalar>(p: &PointG1<S>, q: &PointG1<S>, tol: &Tolerance) -> Result<S> {
    if close(&p.s, &q.s, tol) {
        return Err(Error::CoincidentPoints);
    }
    Ok(p.s.clone() - q.s.clone())
}

/// `[s₁] * [s₂] = -s₁ - s₂ + ((t₁ ∓ t₂) / (2(s₁ - s₂)))²`.
pub fn coset_mul<S: Scalar>(p: &PointG1<S>, q: &PointG1<S>, tol: &Tolerance) -> Result<MultiValue<S>> {
    let d = chord_gap(p, q, tol)?;
    let two_d = S::from_int(2) * d;
    let base = -p.s.clone() - q.s.clone();
    let minus = ((p.t.clone() - q.t.clone()) / two_d.clone()).square();
    let plus = ((p.t.clone() + q.t.clone()) / two_d).square();
    Ok(MultiValue::pair(base.clone() + minus, base + plus))
}

/// `(w₁, w₂)` with `{w₁ - w₂, w₁ + w₂} = {℘(u + v), ℘(u - v)}`.
pub fn w12<S: Scalar>(p: &PointG1<S>, q: &PointG1<S>, curve: &CurveG1<S>, tol: &Tolerance) -> Result<(S, S)> {
    let d = -chord_gap(p, q, tol)?;
    let d2 = d.square();
    let half = S::from_ratio(1, 2);
    let second = S::from_int(6) * p.s.square() - half.clone() * curve.g2.clone();
    let w1 = p.s.clone() + half.clone() * (second * d + p.t.square()) / d2.clone();
    let w2 = half * p.t.clone() * q.t.clone() / d2;
    Ok((w1, w2))
}

/// Chord addition on the curve; doubling is out of scope.
pub fn ec_add<S: Scalar>(p: &PointG1<S>, q: &PointG1<S>, tol: &Tolerance) -> Result<PointG1<S>> {
    let d = chord_gap(p, q, tol)?;
    let slope = (p.t.clone() - q.t.clone()) / d;
    let s = slope.square() / S::from_int(4) - p.s.clone() - q.s.clone();
    let t = slope * (p.s.clone() - s.clone()) - p.t.clone();
    Ok(PointG1 { s, t })
}

/// `(1 : s)`.
pub fn affine_point<S: Scalar>(s: S) -> ProjPoint<S> {
    ProjPoint::new(vec![S::one(), s]).expect("first coordinate is one")
}
