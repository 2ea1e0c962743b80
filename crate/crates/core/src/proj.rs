//! Points of complex projective space in homogeneous coordinates.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::multiset::{Approx, Encode};
use crate::scalar::{Field, Scalar, Tolerance};

/// Homogeneous coordinates of a point in CPⁿ. At least one coordinate is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjPoint<S> {
    coords: Vec<S>,
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|c| !c.is_finite()) || coords.iter().all(Field::is_zero) {
            return Err(Error::InvalidProjectivePoint);
        }
        Ok(ProjPoint { coords })
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Representative scaled so that the largest-magnitude coordinate is one.
    pub fn normalized(&self) -> Self {
        let pivot = self
            .coords
            .iter()
            .max_by(|a, b| a.magnitude().total_cmp(&b.magnitude()))
            .cloned()
            .expect("nonempty");
        ProjPoint { coords: self.coords.iter().map(|c| c.clone() / pivot.clone()).collect() }
    }

    /// `1 - |<p, q>|² / (|p|² |q|²)`, computed in floating point.
    pub fn fubini_study(&self, other: &Self) -> Result<f64> {
        self.same_dim(other)?;
        let p: Vec<_> = self.coords.iter().map(Scalar::to_complex).collect();
        let q: Vec<_> = other.coords.iter().map(Scalar::to_complex).collect();
        let inner: num_complex::Complex64 = p.iter().zip(&q).map(|(a, b)| a.conj() * b).sum();
        let np: f64 = p.iter().map(|a| a.norm_sqr()).sum();
        let nq: f64 = q.iter().map(|a| a.norm_sqr()).sum();
        Ok((1.0 - inner.norm_sqr() / (np * nq)).max(0.0))
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.coords.len() != other.coords.len() {
            return Err(Error::DimensionMismatch { left: self.coords.len(), right: other.coords.len() });
        }
        Ok(())
    }

    fn cross_equal(&self, other: &Self) -> bool {
        let (p, q) = (&self.coords, &other.coords);
        (0..p.len()).all(|i| (i + 1..p.len()).all(|j| p[i].clone() * q[j].clone() == p[j].clone() * q[i].clone()))
    }

    pub fn decode(v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| Error::Parse(format!("expected an array of scalars, got {v}")))?;
        ProjPoint::new(items.iter().map(S::decode).collect::<Result<_>>()?)
    }
}

/// Scale-invariant equality: Fubini–Study distance within `tol.rel` in floating
/// mode, exact cross-multiplication in exact mode.
pub fn proj_equal<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>, tol: &Tolerance) -> Result<bool> {
    p.same_dim(q)?;
    if S::EXACT {
        Ok(p.cross_equal(q))
    } else {
        Ok(p.fubini_study(q)? <= tol.rel)
    }
}

impl<S: Scalar> Approx for ProjPoint<S> {
    fn distance(&self, other: &Self) -> f64 {
        self.fubini_study(other).unwrap_or(f64::INFINITY)
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        proj_equal(self, other, tol).unwrap_or(false)
    }
}

impl<S: Scalar> Encode for ProjPoint<S> {
    fn encode_json(&self) -> Value {
        Value::Array(self.coords.iter().map(Scalar::encode).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C64, Q};
    use proptest::prelude::*;

    fn pt(v: &[f64]) -> ProjPoint<C64> {
        ProjPoint::new(v.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn scalar_multiple_is_equal() {
        assert!(proj_equal(&pt(&[1.0, 2.0]), &pt(&[2.0, 4.0]), &Tolerance::default()).unwrap());
    }

    #[test]
    fn orthogonal_points_differ() {
        assert!(!proj_equal(&pt(&[1.0, 0.0]), &pt(&[0.0, 1.0]), &Tolerance::default()).unwrap());
    }

    #[test]
    fn near_multiple_within_tolerance() {
        let p = pt(&[1.0, 1.0, 1.0, 1.0]);
        let q = pt(&[3.0, 3.0, 3.0, 3.0 + 1e-12]);
        assert!(proj_equal(&p, &q, &Tolerance::new(1e-9, 0.0)).unwrap());
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(ProjPoint::<C64>::new(vec![C64::zero(), C64::zero()]).unwrap_err(), Error::InvalidProjectivePoint);
        assert_eq!(ProjPoint::<Q>::new(vec![Q::zero()]).unwrap_err(), Error::InvalidProjectivePoint);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(proj_equal(&pt(&[1.0, 2.0]), &pt(&[1.0, 2.0, 3.0]), &Tolerance::default()).is_err());
    }

    #[test]
    fn exact_cross_multiplication() {
        let q = |v: &[i64]| ProjPoint::new(v.iter().map(|&x| Q::from_int(x)).collect()).unwrap();
        assert!(proj_equal(&q(&[1, -2, 3]), &q(&[-2, 4, -6]), &Tolerance::exact()).unwrap());
        assert!(!proj_equal(&q(&[1, -2, 3]), &q(&[-2, 4, -5]), &Tolerance::exact()).unwrap());
    }

    proptest! {
        #[test]
        fn equality_is_scale_invariant(
            coords in prop::collection::vec((-3i64..=3, 1i64..=4), 3),
            (n, d) in (1i64..=9, 1i64..=9),
            sign in prop::bool::ANY,
        ) {
            prop_assume!(coords.iter().any(|&(a, _)| a != 0));
            let p = ProjPoint::new(coords.iter().map(|&(a, b)| Q::from_ratio(a, b)).collect()).unwrap();
            let k = Q::from_ratio(if sign { n } else { -n }, d);
            let scaled = ProjPoint::new(p.coords().iter().map(|c| c.clone() * k.clone()).collect()).unwrap();
            prop_assert!(proj_equal(&p, &scaled, &Tolerance::exact()).unwrap());

            let pc = ProjPoint::new(p.coords().iter().map(Scalar::to_complex).collect()).unwrap();
            let kc = C64::new(0.7 * n as f64, -1.3 / d as f64);
            let sc = ProjPoint::new(pc.coords().iter().map(|c| c * kc).collect()).unwrap();
            prop_assert!(proj_equal(&pc, &sc, &Tolerance::default()).unwrap());
        }
    }
}
