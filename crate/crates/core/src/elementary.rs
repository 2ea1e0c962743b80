//! Closed-form two-valued laws: the integer law `[x + y, |x - y|]`, the
//! square-root law p₂, and its one- and two-parameter groupoid deformations.
//!
//! The groupoids come from a one-parameter family of formal group laws
//! `A(u, v) = (u + v - λ₁uv) / (1 - λ₂uv)` with involution
//! `I(u) = -u / (1 - λ₁u)`. Classes `{u, I(u)}` are recorded by the orbit
//! coordinate `x = u·I(u)`, and the product of two classes is
//! `[w(A(u, v)), w(A(u, I(v)))]` where `w` is the orbit coordinate.

use std::marker::PhantomData;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::law::{NGroupoid, NValuedLaw};
use crate::multiset::{Approx, Encode, MultiValue};
use crate::scalar::{close, negligible, solve_quadratic, Scalar, Tolerance};

pub fn zplus_mul(x: i64, y: i64) -> Result<MultiValue<u64>> {
    if x < 0 || y < 0 {
        return Err(Error::DomainError(format!("integer law needs nonnegative operands, got ({x}, {y})")));
    }
    let (x, y) = (x as u64, y as u64);
    Ok(MultiValue::pair(x + y, x.abs_diff(y)))
}

/// The two-valued group on nonnegative integers; unit 0, inverse the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZPlus;

impl NValuedLaw for ZPlus {
    type Elem = u64;

    fn name(&self) -> String {
        "zplus".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &u64, y: &u64) -> Result<MultiValue<u64>> {
        Ok(MultiValue::pair(x + y, x.abs_diff(*y)))
    }
    fn unit(&self) -> u64 {
        0
    }
    fn inverse(&self, x: &u64) -> u64 {
        *x
    }
}

/// Roots of `z² - 2(x + y)z + (x - y)² = 0`, i.e. `(√x ± √y)²`.
pub fn p2_mul<S: Scalar>(x: &S, y: &S) -> Result<MultiValue<S>> {
    let two = S::from_int(2);
    solve_quadratic(&S::one(), &-(two * (x.clone() + y.clone())), &(x.clone() - y.clone()).square())
}

/// p₂ as a two-valued group; unit 0, inverse the identity.
#[derive(Debug, Clone, Copy)]
pub struct P2<S>(PhantomData<S>);

impl<S> Default for P2<S> {
    fn default() -> Self {
        P2(PhantomData)
    }
}

impl<S: Scalar + Approx + Encode> NValuedLaw for P2<S> {
    type Elem = S;

    fn name(&self) -> String {
        "p2".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &S, y: &S) -> Result<MultiValue<S>> {
        p2_mul(x, y)
    }
    fn unit(&self) -> S {
        S::zero()
    }
    fn inverse(&self, x: &S) -> S {
        x.clone()
    }
}

/// Roots of `z² - (2(x + y) - λ²xy)z + (x - y)² = 0`.
pub fn groupoid1_mul<S: Scalar>(x: &S, y: &S, lambda: &S) -> Result<MultiValue<S>> {
    let (x, y) = (x.clone(), y.clone());
    let b = S::from_int(2) * (x.clone() + y.clone()) - lambda.square() * x.clone() * y.clone();
    solve_quadratic(&S::one(), &-b, &(x - y).square())
}

/// Numerators `B`, `C` and common denominator `G` of the two-parameter
/// quadratic `z² - (B/G)z + C/G = 0`.
pub fn groupoid2_coefficients<S: Scalar>(x: &S, y: &S, l1: &S, l2: &S) -> (S, S, S) {
    let (x, y) = (x.clone(), y.clone());
    let xy = x.clone() * y.clone();
    let sum = x.clone() + y.clone();
    let l1s = l1.square();
    let l2s = l2.square();
    let mixed = l1s.clone() * l2.clone() + S::from_int(2) * l2s.clone();
    let g = S::one() - mixed.clone() * xy.clone()
        + l1s.clone() * l2s.clone() * xy.clone() * sum.clone()
        + l2s.clone() * l2.clone() * (l2.clone() - l1s.clone()) * xy.square();
    let b = S::from_int(2) * sum.clone() - (l1s.clone() + S::from_int(8) * l2.clone()) * xy.clone()
        + mixed * xy.clone() * sum
        - l1s * l2s * xy.square();
    let c = (x - y).square();
    (b, c, g)
}

/// Two-parameter groupoid product. Fails with `SingularDenominator` when `G`
/// is negligible.
pub fn groupoid2_mul<S: Scalar>(x: &S, y: &S, l1: &S, l2: &S, tol: &Tolerance) -> Result<MultiValue<S>> {
    let (b, c, g) = groupoid2_coefficients(x, y, l1, l2);
    if negligible(&g, tol) {
        return Err(Error::SingularDenominator);
    }
    solve_quadratic(&S::one(), &-(b / g.clone()), &(c / g))
}

fn nonzero<S: Scalar>(d: S) -> Result<S> {
    if d.is_zero() {
        Err(Error::SingularDenominator)
    } else {
        Ok(d)
    }
}

/// `A(u, v) = (u + v - λ₁uv) / (1 - λ₂uv)`.
pub fn fiber_sum<S: Scalar>(u: &S, v: &S, l1: &S, l2: &S) -> Result<S> {
    let uv = u.clone() * v.clone();
    let den = nonzero(S::one() - l2.clone() * uv.clone())?;
    Ok((u.clone() + v.clone() - l1.clone() * uv) / den)
}

/// `I(u) = -u / (1 - λ₁u)`.
pub fn fiber_involution<S: Scalar>(u: &S, l1: &S) -> Result<S> {
    let den = nonzero(S::one() - l1.clone() * u.clone())?;
    Ok(-u.clone() / den)
}

/// `u·I(u)`, constant on the class `{u, I(u)}`.
pub fn orbit_coordinate<S: Scalar>(u: &S, l1: &S) -> Result<S> {
    Ok(u.clone() * fiber_involution(u, l1)?)
}

/// Product of the classes of `u` and `v` computed through the underlying
/// group law: `[w(A(u, v)), w(A(u, I(v)))]`.
pub fn groupoid_via_group_law<S: Scalar>(u: &S, v: &S, l1: &S, l2: &S) -> Result<MultiValue<S>> {
    let plus = fiber_sum(u, v, l1, l2)?;
    let minus = fiber_sum(u, &fiber_involution(v, l1)?, l1, l2)?;
    Ok(MultiValue::pair(orbit_coordinate(&plus, l1)?, orbit_coordinate(&minus, l1)?))
}

/// A point of a groupoid: coordinate `x` in the fiber over `params`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberPoint<S, const N: usize> {
    pub x: S,
    pub params: [S; N],
}

impl<S: Scalar, const N: usize> FiberPoint<S, N> {
    pub fn new(x: S, params: [S; N]) -> Self {
        FiberPoint { x, params }
    }
}

impl<S: Scalar, const N: usize> Approx for FiberPoint<S, N> {
    fn distance(&self, other: &Self) -> f64 {
        [self.x.clone()].distance(&[other.x.clone()]).max(self.params.distance(&other.params))
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        close(&self.x, &other.x, tol) && self.params.approx_eq(&other.params, tol)
    }
}

impl<S: Scalar, const N: usize> Encode for FiberPoint<S, N> {
    fn encode_json(&self) -> Value {
        json!({ "x": self.x.encode(), "params": self.params.encode_json() })
    }
}

fn same_fiber<S: Scalar, const N: usize>(a: &FiberPoint<S, N>, b: &FiberPoint<S, N>) -> Result<()> {
    if a.params != b.params {
        return Err(Error::AnchorMismatch);
    }
    Ok(())
}

/// One-parameter deformation of p₂ over the λ-line.
#[derive(Debug, Clone, Copy)]
pub struct Groupoid1<S>(PhantomData<S>);

impl<S> Default for Groupoid1<S> {
    fn default() -> Self {
        Groupoid1(PhantomData)
    }
}

impl<S: Scalar> NGroupoid for Groupoid1<S> {
    type Elem = FiberPoint<S, 1>;
    type Base = [S; 1];

    fn name(&self) -> String {
        "groupoid1".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn anchor(&self, x: &Self::Elem) -> [S; 1] {
        x.params.clone()
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<MultiValue<Self::Elem>> {
        same_fiber(a, b)?;
        Ok(groupoid1_mul(&a.x, &b.x, &a.params[0])?.map(|z| FiberPoint::new(z, a.params.clone())))
    }
    fn unit(&self, base: &[S; 1]) -> Self::Elem {
        FiberPoint::new(S::zero(), base.clone())
    }
    fn inverse(&self, x: &Self::Elem) -> Self::Elem {
        x.clone()
    }
}

/// Two-parameter deformation over the (λ₁, λ₂)-plane.
#[derive(Debug, Clone, Copy)]
pub struct Groupoid2<S> {
    pub tol: Tolerance,
    marker: PhantomData<S>,
}

impl<S> Groupoid2<S> {
    pub fn new(tol: Tolerance) -> Self {
        Groupoid2 { tol, marker: PhantomData }
    }
}

impl<S: Scalar> NGroupoid for Groupoid2<S> {
    type Elem = FiberPoint<S, 2>;
    type Base = [S; 2];

    fn name(&self) -> String {
        "groupoid2".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn anchor(&self, x: &Self::Elem) -> [S; 2] {
        x.params.clone()
    }
    fn product(&self, a: &Self::Elem, b: &Self::Elem) -> Result<MultiValue<Self::Elem>> {
        same_fiber(a, b)?;
        let [l1, l2] = &a.params;
        Ok(groupoid2_mul(&a.x, &b.x, l1, l2, &self.tol)?.map(|z| FiberPoint::new(z, a.params.clone())))
    }
    fn unit(&self, base: &[S; 2]) -> Self::Elem {
        FiberPoint::new(S::zero(), base.clone())
    }
    fn inverse(&self, x: &Self::Elem) -> Self::Elem {
        x.clone()
    }
}
