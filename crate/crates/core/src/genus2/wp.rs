//! Kleinian ℘ values at a divisor, derivatives along the Jacobian, and Jacobi inversion.
//!
//! Differentials are normalized as `du1 = s ds / (2μ)`, `du3 = ds / (2μ)`, which
//! makes `∂℘11/∂u1 = ℘111` hold for the closed forms below.

use serde_json::{json, Value};

use super::curve::{coincident, CurveG2, MumfordDivisor};
use crate::error::{Error, Result};
use crate::multiset::Encode;
use crate::scalar::{solve_quadratic, Dual, Field, FromComplex, Scalar, Tolerance, C64};

/// Coordinates `(s1, μ1, s2, μ2)` of a divisor's two support points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPoints<T> {
    pub s1: T,
    pub mu1: T,
    pub s2: T,
    pub mu2: T,
}

impl SupportPoints<C64> {
    pub fn of(d: &MumfordDivisor) -> Result<Self> {
        let [(s1, mu1), (s2, mu2)] = d.support()?;
        Ok(SupportPoints { s1, mu1, s2, mu2 })
    }

    pub fn swapped(&self) -> Self {
        SupportPoints { s1: self.s2, mu1: self.mu2, s2: self.s1, mu2: self.mu1 }
    }

    pub fn to_divisor(&self) -> Result<MumfordDivisor> {
        MumfordDivisor::from_points(self.s1, self.mu1, self.s2, self.mu2)
    }
}

/// Direction of differentiation on the Jacobian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    U1,
    U3,
}

impl Direction {
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Direction::U1),
            3 => Ok(Direction::U3),
            _ => Err(Error::DomainError(format!("direction index must be 1 or 3, got {k}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Direction::U1 => 1,
            Direction::U3 => 3,
        }
    }
}

/// Second- and third-order ℘ values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpJet<T> {
    pub wp11: T,
    pub wp13: T,
    pub wp33: T,
    pub wp111: T,
    pub wp113: T,
    pub wp133: T,
    pub wp333: T,
}

impl<T: Field> WpJet<T> {
    /// `(℘33, ℘13, ℘11, 1)`, the affine Kummer coordinates.
    pub fn kummer_vector(&self) -> [T; 4] {
        [self.wp33.clone(), self.wp13.clone(), self.wp11.clone(), T::one()]
    }

    /// Derivative of [`WpJet::kummer_vector`] along `u_k`.
    pub fn kummer_vector_derivative(&self, k: Direction) -> [T; 4] {
        match k {
            Direction::U1 => [self.wp133.clone(), self.wp113.clone(), self.wp111.clone(), T::zero()],
            Direction::U3 => [self.wp333.clone(), self.wp133.clone(), self.wp113.clone(), T::zero()],
        }
    }

    /// `℘_kl` for `k, l ∈ {1, 3}`.
    pub fn second(&self, k: Direction, l: Direction) -> T {
        match (k, l) {
            (Direction::U1, Direction::U1) => self.wp11.clone(),
            (Direction::U3, Direction::U3) => self.wp33.clone(),
            _ => self.wp13.clone(),
        }
    }
}

impl Encode for WpJet<C64> {
    fn encode_json(&self) -> Value {
        json!({
            "wp11": self.wp11.encode(),
            "wp13": self.wp13.encode(),
            "wp33": self.wp33.encode(),
            "wp111": self.wp111.encode(),
            "wp113": self.wp113.encode(),
            "wp133": self.wp133.encode(),
            "wp333": self.wp333.encode(),
        })
    }
}

/// Symmetric form in the numerator of `℘33`:
/// `2λ10 + λ8(a+b) + ab(2λ6 + λ4(a+b)) + a²b²(a+b)`.
pub fn pair_form<T: FromComplex>(a: &T, b: &T, curve: &CurveG2) -> T {
    let l = |c: C64| T::from_c64(c);
    let (sum, prod) = (a.clone() + b.clone(), a.clone() * b.clone());
    T::from_int(2) * l(curve.lambda10)
        + l(curve.lambda8) * sum.clone()
        + prod.clone() * (T::from_int(2) * l(curve.lambda6) + l(curve.lambda4) * sum.clone())
        + prod.square() * sum
}

/// Form entering `℘333`:
/// `4λ10 + λ8(3a+b) + 2λ6 a(a+b) + λ4 a²(a+3b) + a³b(3a+b)`.
pub fn cubic_form<T: FromComplex>(a: &T, b: &T, curve: &CurveG2) -> T {
    let l = |c: C64| T::from_c64(c);
    let n = |k: i64| T::from_int(k);
    let (a, b) = (a.clone(), b.clone());
    n(4) * l(curve.lambda10)
        + l(curve.lambda8) * (n(3) * a.clone() + b.clone())
        + n(2) * l(curve.lambda6) * a.clone() * (a.clone() + b.clone())
        + l(curve.lambda4) * a.square() * (a.clone() + n(3) * b.clone())
        + a.powi(3) * b.clone() * (n(3) * a + b)
}

/// Closed-form ℘ values at a support with `s1 ≠ s2`.
pub fn wp_jet<T: FromComplex>(p: &SupportPoints<T>, curve: &CurveG2) -> WpJet<T> {
    let SupportPoints { s1, mu1, s2, mu2 } = p.clone();
    let two = T::from_int(2);
    let d = s1.clone() - s2.clone();
    let wp33 = (pair_form(&s1, &s2, curve) - two.clone() * mu1.clone() * mu2.clone()) / d.square();
    WpJet {
        wp11: s1.clone() + s2.clone(),
        wp13: -(s1.clone() * s2.clone()),
        wp33,
        wp111: two.clone() * (mu1.clone() - mu2.clone()) / d.clone(),
        wp113: two.clone() * (s1.clone() * mu2.clone() - s2.clone() * mu1.clone()) / d.clone(),
        wp133: -(two.clone() * (s1.square() * mu2.clone() - s2.square() * mu1.clone()) / d.clone()),
        wp333: two
            * (cubic_form(&s1, &s2, curve) * mu2 - cubic_form(&s2, &s1, curve) * mu1)
            / d.powi(3),
    }
}

/// ℘ values of a degree-2 divisor.
pub fn wp_from_divisor(d: &MumfordDivisor, curve: &CurveG2) -> Result<WpJet<C64>> {
    Ok(wp_jet(&SupportPoints::of(d)?, curve))
}

/// Rate of change of `(s1, μ1, s2, μ2)` along `u_k`.
pub fn velocity<T: FromComplex>(p: &SupportPoints<T>, k: Direction, curve: &CurveG2) -> SupportPoints<T> {
    let SupportPoints { s1, mu1, s2, mu2 } = p.clone();
    let two = T::from_int(2);
    let d = s1.clone() - s2.clone();
    // dμ = f'(s) ds / (2μ); the μ factors cancel against ds
    match k {
        Direction::U1 => SupportPoints {
            s1: two.clone() * mu1 / d.clone(),
            mu1: curve.df(s1) / d.clone(),
            s2: -(two * mu2) / d.clone(),
            mu2: -(curve.df(s2) / d),
        },
        Direction::U3 => SupportPoints {
            s1: -(two.clone() * s2.clone() * mu1) / d.clone(),
            mu1: -(s2.clone() * curve.df(s1.clone())) / d.clone(),
            s2: two * s1.clone() * mu2 / d.clone(),
            mu2: s1 * curve.df(s2) / d,
        },
    }
}

fn seeded(d: &MumfordDivisor, k: Direction, curve: &CurveG2) -> Result<SupportPoints<Dual>> {
    let p = SupportPoints::of(d)?;
    let v = velocity(&p, k, curve);
    Ok(SupportPoints {
        s1: Dual::new(p.s1, v.s1),
        mu1: Dual::new(p.mu1, v.mu1),
        s2: Dual::new(p.s2, v.s2),
        mu2: Dual::new(p.mu2, v.mu2),
    })
}

/// Exact directional derivative along `u_k` of a function of the support coordinates.
pub fn du_derivative<G>(g: G, d: &MumfordDivisor, k: Direction, curve: &CurveG2) -> Result<C64>
where
    G: Fn(&SupportPoints<Dual>) -> Dual,
{
    Ok(g(&seeded(d, k, curve)?).tangent)
}

/// Derivative of every ℘ value along `u_k`; its third-order fields are fourth-order ℘ values.
pub fn wp_jet_derivative(d: &MumfordDivisor, k: Direction, curve: &CurveG2) -> Result<WpJet<C64>> {
    let jet = wp_jet(&seeded(d, k, curve)?, curve);
    Ok(WpJet {
        wp11: jet.wp11.tangent,
        wp13: jet.wp13.tangent,
        wp33: jet.wp33.tangent,
        wp111: jet.wp111.tangent,
        wp113: jet.wp113.tangent,
        wp133: jet.wp133.tangent,
        wp333: jet.wp333.tangent,
    })
}

/// Divisor with support the roots of `s² − ℘11 s − ℘13` and `2μ = ℘111 s + ℘113`.
pub fn jacobi_invert(
    wp11: C64,
    wp13: C64,
    wp111: C64,
    wp113: C64,
    curve: &CurveG2,
    tol: &Tolerance,
) -> Result<MumfordDivisor> {
    let roots = solve_quadratic(&C64::new(1.0, 0.0), &-wp11, &-wp13)?;
    let (s1, s2) = (roots.elements()[0], roots.elements()[1]);
    if coincident(s1, s2) {
        return Err(Error::CoincidentSupport);
    }
    let mu = |s: C64| (wp111 * s + wp113) / 2.0;
    let residual = curve.residual(s1, mu(s1)).max(curve.residual(s2, mu(s2)));
    if residual > tol.rel.max(tol.abs) {
        return Err(Error::OffCurve { residual });
    }
    MumfordDivisor::from_points(s1, mu(s1), s2, mu(s2))
}

/// `(e10, e01, e20, e02, e11)`: elementary symmetric functions of the support.
pub fn polysymmetric<S: Field>(s1: &S, mu1: &S, s2: &S, mu2: &S) -> [S; 5] {
    [
        s1.clone() + s2.clone(),
        mu1.clone() + mu2.clone(),
        s1.clone() * s2.clone(),
        mu1.clone() * mu2.clone(),
        s1.clone() * mu2.clone() + s2.clone() * mu1.clone(),
    ]
}

/// `(e10² − 4e20)(e01² − 4e02) − (e10 e01 − 2e11)²`, identically zero.
pub fn polysymmetric_defect<S: Field>(e: &[S; 5]) -> S {
    let [e10, e01, e20, e02, e11] = e.clone();
    let four = S::from_int(4);
    (e10.square() - four.clone() * e20) * (e01.square() - four * e02) - (e10 * e01 - S::from_int(2) * e11).square()
}
