//! The genus-2 curve `μ² = f(s)`, Mumford divisors and Cantor's group law.

use rand::Rng;
use serde_json::{json, Map, Value};

use super::poly::{xgcd, Poly, ZERO_THRESHOLD};
use crate::error::{Error, Result};
use crate::multiset::{Approx, Encode};
use crate::sampling::complex_in_disk;
use crate::scalar::{solve_quadratic, FromComplex, Scalar, Tolerance, C64};

/// Relative separation below which two support abscissae count as coincident.
pub const COINCIDENT_THRESHOLD: f64 = 1e-8;
/// Relative size below which an ordinate counts as zero (a branch point).
pub const BRANCH_THRESHOLD: f64 = 1e-10;
/// Growth of Mumford coefficients, relative to the operands, beyond which a
/// Cantor result is treated as too close to the point at infinity to trust.
pub const GROWTH_LIMIT: f64 = 5e2;

/// `f(s) = s⁵ + λ4 s³ + λ6 s² + λ8 s + λ10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveG2 {
    pub lambda4: C64,
    pub lambda6: C64,
    pub lambda8: C64,
    pub lambda10: C64,
}

impl CurveG2 {
    /// A curve whose quintic has five distinct roots.
    pub fn new(lambda4: C64, lambda6: C64, lambda8: C64, lambda10: C64) -> Result<Self> {
        let c = CurveG2 { lambda4, lambda6, lambda8, lambda10 };
        if c.coeffs().iter().any(|x| !Scalar::is_finite(x)) {
            return Err(Error::SingularCurve("non-finite coefficient".into()));
        }
        let (g, _, _) = xgcd(&c.poly(), &c.derivative_poly())
            .map_err(|_| Error::SingularCurve("quintic is numerically close to having a repeated root".into()))?;
        if g.degree() != Some(0) {
            return Err(Error::SingularCurve("quintic has a repeated root".into()));
        }
        Ok(c)
    }

    pub fn from_reals(l: [f64; 4]) -> Result<Self> {
        let c = |x: f64| C64::new(x, 0.0);
        CurveG2::new(c(l[0]), c(l[1]), c(l[2]), c(l[3]))
    }

    /// Coefficients drawn from the disk of radius `radius`, redrawn until nonsingular.
    pub fn random(rng: &mut impl Rng, radius: f64) -> Self {
        loop {
            let mut l = || complex_in_disk(rng, radius);
            if let Ok(c) = CurveG2::new(l(), l(), l(), l()) {
                return c;
            }
        }
    }

    /// `μ² = s⁵`. Singular; admitted only where rational-limit formulas are compared.
    pub fn rational_limit() -> Self {
        let z = C64::new(0.0, 0.0);
        CurveG2 { lambda4: z, lambda6: z, lambda8: z, lambda10: z }
    }

    pub fn coeffs(&self) -> [C64; 4] {
        [self.lambda4, self.lambda6, self.lambda8, self.lambda10]
    }

    pub fn poly(&self) -> Poly {
        let z = C64::new(0.0, 0.0);
        Poly::new(vec![self.lambda10, self.lambda8, self.lambda6, self.lambda4, z, C64::new(1.0, 0.0)])
    }

    fn derivative_poly(&self) -> Poly {
        let z = C64::new(0.0, 0.0);
        Poly::new(vec![self.lambda8, self.lambda6 * 2.0, self.lambda4 * 3.0, z, C64::new(5.0, 0.0)])
    }

    pub fn f<T: FromComplex>(&self, s: T) -> T {
        let l = |c: C64| T::from_c64(c);
        let s2 = s.square();
        s2.clone() * s2.clone() * s.clone()
            + l(self.lambda4) * s2.clone() * s.clone()
            + l(self.lambda6) * s2
            + l(self.lambda8) * s
            + l(self.lambda10)
    }

    pub fn df<T: FromComplex>(&self, s: T) -> T {
        let l = |c: C64| T::from_c64(c);
        let s2 = s.square();
        T::from_int(5) * s2.clone() * s2.clone()
            + T::from_int(3) * l(self.lambda4) * s2
            + T::from_int(2) * l(self.lambda6) * s
            + l(self.lambda8)
    }

    /// Relative defect of `μ² = f(s)`.
    pub fn residual(&self, s: C64, mu: C64) -> f64 {
        let (lhs, rhs) = (mu * mu, self.f(s));
        (lhs - rhs).norm() / 1f64.max(lhs.norm()).max(rhs.norm())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lambda4": self.lambda4.encode(),
            "lambda6": self.lambda6.encode(),
            "lambda8": self.lambda8.encode(),
            "lambda10": self.lambda10.encode(),
        })
    }

    /// Parses `{"lambda4": .., "lambda6": .., "lambda8": .., "lambda10": ..}`.
    /// Missing keys default to zero; the result is checked for nonsingularity.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("curve must be a JSON object".into()))?;
        for key in obj.keys() {
            if !["lambda4", "lambda6", "lambda8", "lambda10"].contains(&key.as_str()) {
                return Err(Error::Parse(format!("unknown curve key {key:?}")));
            }
        }
        let get = |k: &str| obj.get(k).map(C64::decode).unwrap_or(Ok(C64::new(0.0, 0.0)));
        CurveG2::new(get("lambda4")?, get("lambda6")?, get("lambda8")?, get("lambda10")?)
    }
}

/// `(U, V)` with `U` monic of degree at most two, `deg V < deg U` and `U | V² − f`.
#[derive(Debug, Clone, PartialEq)]
pub struct MumfordDivisor {
    u: Poly,
    v: Poly,
}

impl MumfordDivisor {
    pub fn neutral() -> Self {
        MumfordDivisor { u: Poly::one(), v: Poly::zero() }
    }

    /// `U = s² + u1 s + u0`, `V = v1 s + v0`.
    pub fn from_coeffs(u: [C64; 2], v: [C64; 2]) -> Self {
        MumfordDivisor {
            u: Poly::new(vec![u[0], u[1], C64::new(1.0, 0.0)]),
            v: Poly::new(v.to_vec()),
        }
    }

    /// The class of `(s1, μ1) + (s2, μ2) − 2∞`; needs `s1 ≠ s2`.
    pub fn from_points(s1: C64, mu1: C64, s2: C64, mu2: C64) -> Result<Self> {
        if coincident(s1, s2) {
            return Err(Error::CoincidentSupport);
        }
        let slope = (mu2 - mu1) / (s2 - s1);
        Ok(MumfordDivisor::from_coeffs([s1 * s2, -(s1 + s2)], [mu1 - slope * s1, slope]))
    }

    /// A divisor with support drawn uniformly from the disk of radius `radius`
    /// and ordinates the principal square roots of `f`.
    pub fn random(rng: &mut impl Rng, curve: &CurveG2, radius: f64) -> Result<Self> {
        let (s1, s2) = (complex_in_disk(rng, radius), complex_in_disk(rng, radius));
        MumfordDivisor::from_points(s1, curve.f(s1).sqrt(), s2, curve.f(s2).sqrt())
    }

    /// The class of `(s, μ) − ∞`.
    pub fn from_point(s: C64, mu: C64) -> Self {
        MumfordDivisor { u: Poly::new(vec![-s, C64::new(1.0, 0.0)]), v: Poly::constant(mu) }
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn degree(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    /// Largest Mumford coefficient magnitude, at least one.
    pub fn scale(&self) -> f64 {
        1f64.max(self.u.norm()).max(self.v.norm())
    }

    pub fn is_neutral(&self) -> bool {
        self.degree() == 0
    }

    /// Relative size of `(V² − f) mod U`.
    pub fn residual(&self, curve: &CurveG2) -> f64 {
        let f = curve.poly();
        let r = (&(&self.v * &self.v) - &f).rem(&self.u);
        r.norm() / 1f64.max(f.norm()).max(self.v.norm().powi(2))
    }

    pub fn validate(&self, curve: &CurveG2, tol: &Tolerance) -> Result<()> {
        let residual = self.residual(curve);
        if residual > tol.rel.max(tol.abs) {
            return Err(Error::OffCurve { residual });
        }
        Ok(())
    }

    /// The two support points `[(s1, μ1), (s2, μ2)]` of a degree-2 divisor.
    pub fn support(&self) -> Result<[(C64, C64); 2]> {
        if self.degree() < 2 {
            return Err(Error::PointAtInfinity);
        }
        let one = C64::new(1.0, 0.0);
        let roots = solve_quadratic(&one, &self.u.coeff(1), &self.u.coeff(0))?;
        let (s1, s2) = (roots.elements()[0], roots.elements()[1]);
        if coincident(s1, s2) {
            return Err(Error::CoincidentSupport);
        }
        Ok([(s1, self.v.eval(s1)), (s2, self.v.eval(s2))])
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("divisor must be a JSON object".into()))?;
        let list = |k: &str| -> Result<Vec<C64>> {
            let items = obj
                .get(k)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("divisor needs an array {k:?}")))?;
            items.iter().map(C64::decode).collect()
        };
        let (mut u, mut v) = (list("U")?, list("V")?);
        if u.len() > 2 || v.len() > u.len() {
            return Err(Error::Parse("divisor needs deg U <= 2 and deg V < deg U".into()));
        }
        u.push(C64::new(1.0, 0.0));
        v.resize(u.len() - 1, C64::new(0.0, 0.0));
        Ok(MumfordDivisor { u: Poly::new(u), v: Poly::new(v) })
    }
}

impl Encode for MumfordDivisor {
    fn encode_json(&self) -> Value {
        let d = self.degree();
        let u: Vec<Value> = (0..d).map(|i| self.u.coeff(i).encode()).collect();
        let v: Vec<Value> = (0..d).map(|i| self.v.coeff(i).encode()).collect();
        let mut m = Map::new();
        m.insert("U".into(), Value::Array(u));
        m.insert("V".into(), Value::Array(v));
        Value::Object(m)
    }
}

impl Approx for MumfordDivisor {
    fn distance(&self, other: &Self) -> f64 {
        if self.degree() != other.degree() {
            return f64::INFINITY;
        }
        let du = (&self.u - &other.u).norm();
        let dv = (&self.v - &other.v).norm();
        let scale = [1.0, self.u.norm(), other.u.norm(), self.v.norm(), other.v.norm()]
            .into_iter()
            .fold(0.0, f64::max);
        du.max(dv) / scale
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.distance(other) <= tol.rel.max(tol.abs)
    }
}

pub(crate) fn coincident(a: C64, b: C64) -> bool {
    (a - b).norm() <= COINCIDENT_THRESHOLD * 1f64.max(a.norm()).max(b.norm())
}

pub fn cantor_neg(d: &MumfordDivisor) -> MumfordDivisor {
    MumfordDivisor { u: d.u.clone(), v: -&d.v }
}

/// Composition followed by reduction, over complex floats.
pub fn cantor_add(a: &MumfordDivisor, b: &MumfordDivisor, curve: &CurveG2) -> Result<MumfordDivisor> {
    let f = curve.poly();
    let (d1, e1, e2) = xgcd(&a.u, &b.u)?;
    let (d, c1, c2) = xgcd(&d1, &(&a.v + &b.v))?;
    let (s1, s2, s3) = (&c1 * &e1, &c1 * &e2, c2);
    let mut u = (&a.u * &b.u).div_rem(&(&d * &d)).0;
    let numerator = &(&(&(&s1 * &a.u) * &b.v) + &(&(&s2 * &b.u) * &a.v)) + &(&s3 * &(&(&a.v * &b.v) + &f));
    let mut v = numerator.div_rem(&d).0.rem(&u);
    while u.degree().unwrap_or(0) > 2 {
        // a leading coefficient at rounding level means the degree dropped
        let next = (&f - &(&v * &v)).div_rem(&u).0.trimmed(ZERO_THRESHOLD).monic();
        v = (-&v).rem(&next);
        u = next;
    }
    if u.is_zero() {
        return Err(Error::NumericallySingular("reduction produced a zero polynomial".into()));
    }
    let u = u.monic();
    let v = v.rem(&u);
    let out = MumfordDivisor { u, v };
    if out.scale() > GROWTH_LIMIT * a.scale().max(b.scale()) {
        return Err(Error::NumericallySingular(format!(
            "Cantor result has coefficients of size {:e}, support is near infinity",
            out.scale()
        )));
    }
    Ok(out)
}

pub fn cantor_sub(a: &MumfordDivisor, b: &MumfordDivisor, curve: &CurveG2) -> Result<MumfordDivisor> {
    cantor_add(a, &cantor_neg(b), curve)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::sampling::sample_rng;
    use rand::Rng;

    pub(crate) fn curve() -> CurveG2 {
        CurveG2::from_reals([0.3, -1.1, 0.7, 0.4]).unwrap()
    }

    pub(crate) fn random_divisor(rng: &mut impl Rng, c: &CurveG2) -> MumfordDivisor {
        MumfordDivisor::random(rng, c, 2.0).unwrap()
    }

    #[test]
    fn singular_curves_are_rejected() {
        // s⁵ has a quintuple root; (s - 1)² divides s⁵ - 5s + 4
        assert!(matches!(CurveG2::from_reals([0.0; 4]), Err(Error::SingularCurve(_))));
        assert!(matches!(CurveG2::from_reals([0.0, 0.0, -5.0, 4.0]), Err(Error::SingularCurve(_))));
        assert!(CurveG2::from_reals([0.0, 0.0, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn divisor_json_round_trip() {
        let c = curve();
        let d = random_divisor(&mut sample_rng(3, 0), &c);
        let back = MumfordDivisor::from_json(&d.encode_json()).unwrap();
        assert_eq!(back, d);
        assert!(MumfordDivisor::from_json(&json!({"U": [], "V": []})).unwrap().is_neutral());
        assert!(MumfordDivisor::from_json(&json!({"U": [1], "V": [1, 2]})).is_err());
    }

    #[test]
    fn unit_and_inverse() {
        let c = curve();
        let tol = Tolerance::uniform(1e-10);
        for i in 0..20 {
            let d = random_divisor(&mut sample_rng(5, i), &c);
            assert!(d.residual(&c) < 1e-12);
            assert!(cantor_add(&d, &MumfordDivisor::neutral(), &c).unwrap().approx_eq(&d, &tol));
            assert!(cantor_add(&MumfordDivisor::neutral(), &d, &c).unwrap().approx_eq(&d, &tol));
            assert!(cantor_sub(&d, &d, &c).unwrap().is_neutral());
        }
    }

    #[test]
    fn group_law_round_trip_and_commutativity() {
        let c = curve();
        let tol = Tolerance::uniform(1e-8);
        let mut checked = 0;
        for i in 0..100 {
            let mut rng = sample_rng(9, i);
            let (a, b) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
            let Ok(sum) = cantor_add(&a, &b, &c) else { continue };
            assert!(sum.residual(&c) < 1e-8);
            assert!(sum.approx_eq(&cantor_add(&b, &a, &c).unwrap(), &tol));
            if let Ok(back) = cantor_sub(&sum, &b, &c) {
                assert!(back.approx_eq(&a, &tol), "sample {i}: distance {:e}", back.distance(&a));
                checked += 1;
            }
        }
        assert!(checked >= 95);
    }

    #[test]
    fn associativity() {
        let c = curve();
        let tol = Tolerance::uniform(1e-7);
        for i in 0..30 {
            let mut rng = sample_rng(13, i);
            let (a, b, d) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
            let left = cantor_add(&a, &b, &c).and_then(|ab| cantor_add(&ab, &d, &c));
            let right = cantor_add(&b, &d, &c).and_then(|bd| cantor_add(&a, &bd, &c));
            if let (Ok(left), Ok(right)) = (left, right) {
                assert!(left.approx_eq(&right, &tol), "sample {i}: distance {:e}", left.distance(&right));
            }
        }
    }

    #[test]
    fn doubling_and_degree_one_classes() {
        let c = curve();
        let p = |s: f64| {
            let s = C64::new(s, 0.0);
            MumfordDivisor::from_point(s, c.f(s).sqrt())
        };
        // (P − ∞) + (Q − ∞) has support {P, Q}
        let sum = cantor_add(&p(0.5), &p(1.5), &c).unwrap();
        let [(s1, _), (s2, _)] = sum.support().unwrap();
        assert!(((s1 + s2) - C64::new(2.0, 0.0)).norm() < 1e-12);
        // (P − ∞) − (P − ∞) = 0 and (P − ∞) + (−P − ∞) = 0
        assert!(cantor_add(&p(0.5), &cantor_neg(&p(0.5)), &c).unwrap().is_neutral());
        let d = random_divisor(&mut sample_rng(1, 1), &c);
        let twice = cantor_add(&d, &d, &c).unwrap();
        assert!(twice.residual(&c) < 1e-9);
        assert!(cantor_sub(&twice, &d, &c).unwrap().approx_eq(&d, &Tolerance::uniform(1e-8)));
    }
}
