//! n-valued groups and n-groupoids, and the checkers for their axioms.
//!
//! Associativity of an n-valued law compares two n²-multisets: `x * (y * z)`
//! is the concatenation of `x * w` over every `w` in `y * z`, and likewise
//! `(x * y) * z` concatenates `w * z` over `w` in `x * y`.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::multiset::{multiset_distance, multiset_equal, Approx, Encode, MultiValue};
use crate::scalar::Tolerance;

/// A multiplication `X × X → (X)ⁿ` with unit and inverse.
pub trait NValuedLaw {
    type Elem: Clone + Approx + Encode;

    fn name(&self) -> String;
    fn arity(&self) -> usize;
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Result<MultiValue<Self::Elem>>;
    fn unit(&self) -> Self::Elem;
    fn inverse(&self, x: &Self::Elem) -> Self::Elem;
}

/// A fiberwise n-valued structure over a base, with anchor map, unit section
/// and anchor-preserving inverse.
pub trait NGroupoid {
    type Elem: Clone + Approx + Encode;
    type Base: Clone + PartialEq + Encode;

    fn name(&self) -> String;
    fn arity(&self) -> usize;
    fn anchor(&self, x: &Self::Elem) -> Self::Base;
    /// Defined only on pairs with equal anchors.
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Result<MultiValue<Self::Elem>>;
    fn unit(&self, base: &Self::Base) -> Self::Elem;
    fn inverse(&self, x: &Self::Elem) -> Self::Elem;
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub inputs: Value,
    pub left: Value,
    pub right: Value,
    pub distance: f64,
}

/// Outcome of one or more axiom checks. Passed iff `failures` is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub samples: usize,
    pub resampled: usize,
    pub max_distance: f64,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn empty(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), samples: 0, resampled: 0, max_distance: 0.0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one comparison.
    pub fn record(&mut self, ok: bool, distance: f64, failure: impl FnOnce() -> Failure) {
        self.samples += 1;
        if distance.is_nan() || distance > self.max_distance {
            self.max_distance = distance;
        }
        if !ok {
            self.failures.push(failure());
        }
    }

    /// Associative merge; keeps the receiver's name.
    pub fn merge(mut self, other: CheckReport) -> Self {
        self.samples += other.samples;
        self.resampled += other.resampled;
        if other.max_distance.is_nan() || other.max_distance > self.max_distance {
            self.max_distance = other.max_distance;
        }
        self.failures.extend(other.failures);
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl Serialize for CheckReport {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        let mut st = s.serialize_struct("CheckReport", 6)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("samples", &self.samples)?;
        st.serialize_field("resampled", &self.resampled)?;
        st.serialize_field("max_distance", &self.max_distance)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("passed", &self.passed())?;
        st.end()
    }
}

fn wrap(inputs: &Value) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        already @ Error::LawEvaluation { .. } => already,
        e => Error::LawEvaluation { inputs: inputs.to_string(), source: Box::new(e) },
    }
}

fn compare<T: Approx + Encode>(
    report: &mut CheckReport,
    inputs: &Value,
    left: &MultiValue<T>,
    right: &MultiValue<T>,
    tol: &Tolerance,
) -> Result<()> {
    let ok = multiset_equal(left, right, tol)?;
    let distance = multiset_distance(left, right)?;
    report.record(ok, distance, || Failure {
        inputs: inputs.clone(),
        left: left.encode_json(),
        right: right.encode_json(),
        distance,
    });
    Ok(())
}

/// Compares the flattened n²-multisets `x * (y * z)` and `(x * y) * z`.
pub fn check_associativity<L: NValuedLaw>(
    law: &L,
    x: &L::Elem,
    y: &L::Elem,
    z: &L::Elem,
    tol: &Tolerance,
) -> Result<CheckReport> {
    let inputs = Value::Array(vec![x.encode_json(), y.encode_json(), z.encode_json()]);
    let err = wrap(&inputs);
    let yz = law.product(y, z).map_err(&err)?;
    let left = MultiValue::flatten(yz.iter().map(|w| law.product(x, w)).collect::<Result<_>>().map_err(&err)?)?;
    let xy = law.product(x, y).map_err(&err)?;
    let right = MultiValue::flatten(xy.iter().map(|w| law.product(w, z)).collect::<Result<_>>().map_err(&err)?)?;
    let mut report = CheckReport::empty(format!("{} associativity", law.name()));
    compare(&mut report, &inputs, &left, &right, tol)?;
    Ok(report)
}

/// `e * x = x * e = [x, ..., x]`.
pub fn check_unit<L: NValuedLaw>(law: &L, x: &L::Elem, tol: &Tolerance) -> Result<CheckReport> {
    let inputs = x.encode_json();
    let err = wrap(&inputs);
    let e = law.unit();
    let diag = MultiValue::repeat(x, law.arity());
    let mut report = CheckReport::empty(format!("{} unit", law.name()));
    compare(&mut report, &inputs, &law.product(&e, x).map_err(&err)?, &diag, tol)?;
    compare(&mut report, &inputs, &law.product(x, &e).map_err(&err)?, &diag, tol)?;
    Ok(report)
}

/// `e ∈ inv(x) * x` and `e ∈ x * inv(x)`.
pub fn check_inverse<L: NValuedLaw>(law: &L, x: &L::Elem, tol: &Tolerance) -> Result<CheckReport> {
    let inputs = x.encode_json();
    let err = wrap(&inputs);
    let e = law.unit();
    let xi = law.inverse(x);
    let mut report = CheckReport::empty(format!("{} inverse", law.name()));
    for prod in [law.product(&xi, x).map_err(&err)?, law.product(x, &xi).map_err(&err)?] {
        record_containment(&mut report, &inputs, &prod, &e, tol);
    }
    Ok(report)
}

fn record_containment<T: Approx + Encode>(
    report: &mut CheckReport,
    inputs: &Value,
    set: &MultiValue<T>,
    member: &T,
    tol: &Tolerance,
) {
    let ok = set.iter().any(|w| w.approx_eq(member, tol));
    let distance = set.iter().map(|w| w.distance(member)).fold(f64::INFINITY, f64::min);
    report.record(ok, distance, || Failure {
        inputs: inputs.clone(),
        left: set.encode_json(),
        right: member.encode_json(),
        distance,
    });
}

/// Action axioms: `x₁ ∘ (x₂ ∘ y) = (x₁ * x₂) ∘ y` as n²-multisets, and `e ∘ y = [y, ..., y]`.
pub fn check_action<L, Y, A>(law: &L, action: A, x1: &L::Elem, x2: &L::Elem, y: &Y, tol: &Tolerance) -> Result<CheckReport>
where
    L: NValuedLaw,
    Y: Clone + Approx + Encode,
    A: Fn(&L::Elem, &Y) -> Result<MultiValue<Y>>,
{
    let inputs = Value::Array(vec![x1.encode_json(), x2.encode_json(), y.encode_json()]);
    let err = wrap(&inputs);
    let inner = action(x2, y).map_err(&err)?;
    let left = MultiValue::flatten(inner.iter().map(|w| action(x1, w)).collect::<Result<_>>().map_err(&err)?)?;
    let prod = law.product(x1, x2).map_err(&err)?;
    let right = MultiValue::flatten(prod.iter().map(|g| action(g, y)).collect::<Result<_>>().map_err(&err)?)?;
    let mut report = CheckReport::empty(format!("{} action", law.name()));
    compare(&mut report, &inputs, &left, &right, tol)?;
    let unit = action(&law.unit(), y).map_err(&err)?;
    compare(&mut report, &inputs, &unit, &MultiValue::repeat(y, unit.arity()), tol)?;
    Ok(report)
}

/// The n-valued law a groupoid induces on one fiber.
pub struct FiberLaw<'a, G: NGroupoid> {
    pub groupoid: &'a G,
    pub base: G::Base,
}

impl<G: NGroupoid> NValuedLaw for FiberLaw<'_, G> {
    type Elem = G::Elem;

    fn name(&self) -> String {
        format!("{} fiber {}", self.groupoid.name(), self.base.encode_json())
    }
    fn arity(&self) -> usize {
        self.groupoid.arity()
    }
    fn product(&self, x: &G::Elem, y: &G::Elem) -> Result<MultiValue<G::Elem>> {
        self.groupoid.product(x, y)
    }
    fn unit(&self) -> G::Elem {
        self.groupoid.unit(&self.base)
    }
    fn inverse(&self, x: &G::Elem) -> G::Elem {
        self.groupoid.inverse(x)
    }
}

/// Checks fiberwise associativity, the unit section and inverse containment
/// on triples sharing one anchor.
pub fn check_groupoid<G: NGroupoid>(
    g: &G,
    samples: &[(G::Elem, G::Elem, G::Elem)],
    tol: &Tolerance,
) -> Result<CheckReport> {
    let mut report = CheckReport::empty(format!("{} groupoid", g.name()));
    for (x1, x2, x3) in samples {
        let base = g.anchor(x1);
        if g.anchor(x2) != base || g.anchor(x3) != base {
            return Err(Error::AnchorMismatch);
        }
        if g.anchor(&g.inverse(x1)) != base {
            return Err(Error::AnchorMismatch);
        }
        let fiber = FiberLaw { groupoid: g, base: base.clone() };
        if g.anchor(&fiber.unit()) != base {
            return Err(Error::AnchorMismatch);
        }
        report = report
            .merge(check_associativity(&fiber, x1, x2, x3, tol)?)
            .merge(check_unit(&fiber, x1, tol)?)
            .merge(check_inverse(&fiber, x1, tol)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z₊ with m(x, y) = [x + y, |x - y|], local copy to keep this module self-contained.
    struct Zp;

    impl NValuedLaw for Zp {
        type Elem = u64;
        fn name(&self) -> String {
            "zp".into()
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

    /// Deliberately wrong: second value is x + y + 1.
    struct Broken;

    impl NValuedLaw for Broken {
        type Elem = u64;
        fn name(&self) -> String {
            "broken".into()
        }
        fn arity(&self) -> usize {
            2
        }
        fn product(&self, x: &u64, y: &u64) -> Result<MultiValue<u64>> {
            Ok(MultiValue::pair(x + y, x + y + 1))
        }
        fn unit(&self) -> u64 {
            0
        }
        fn inverse(&self, x: &u64) -> u64 {
            *x
        }
    }

    #[test]
    fn zplus_associativity_by_enumeration() {
        // both sides are {10, 6, 0, 4}
        let r = check_associativity(&Zp, &3, &5, &2, &Tolerance::exact()).unwrap();
        assert!(r.passed());
        assert_eq!(r.samples, 1);
    }

    #[test]
    fn unit_and_inverse() {
        assert!(check_unit(&Zp, &7, &Tolerance::exact()).unwrap().passed());
        assert!(check_inverse(&Zp, &5, &Tolerance::exact()).unwrap().passed());
        assert!(!check_unit(&Broken, &7, &Tolerance::exact()).unwrap().passed());
        assert!(!check_inverse(&Broken, &5, &Tolerance::exact()).unwrap().passed());
    }

    #[test]
    fn unit_as_third_argument_reduces_to_unit_law() {
        assert!(check_associativity(&Zp, &4, &9, &0, &Tolerance::exact()).unwrap().passed());
    }

    #[test]
    fn self_action_matches_associativity() {
        let act = |g: &u64, y: &u64| Zp.product(g, y);
        assert!(check_action(&Zp, act, &3, &5, &2, &Tolerance::exact()).unwrap().passed());
    }

    #[test]
    fn action_with_wrong_unit_fails() {
        // e ∘ y = [y, y + 1]
        let act = |g: &u64, y: &u64| Ok(MultiValue::pair(g + y, g + y + 1));
        let r = check_action(&Zp, act, &1, &2, &3, &Tolerance::exact()).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn report_serialization_and_merge() {
        let a = check_associativity(&Zp, &3, &5, &2, &Tolerance::exact()).unwrap();
        let b = check_unit(&Broken, &7, &Tolerance::exact()).unwrap();
        let m = a.merge(b);
        assert_eq!(m.samples, 3);
        let v = m.to_json();
        assert_eq!(v["passed"], Value::Bool(false));
        assert_eq!(v["failures"].as_array().unwrap().len(), 2);
        assert!(v["failures"][0].get("inputs").is_some());
        assert!(v["failures"][0].get("distance").is_some());
    }

    #[test]
    fn law_errors_carry_the_offending_triple() {
        struct Failing;
        impl NValuedLaw for Failing {
            type Elem = u64;
            fn name(&self) -> String {
                "failing".into()
            }
            fn arity(&self) -> usize {
                2
            }
            fn product(&self, _: &u64, _: &u64) -> Result<MultiValue<u64>> {
                Err(Error::SingularDenominator)
            }
            fn unit(&self) -> u64 {
                0
            }
            fn inverse(&self, x: &u64) -> u64 {
                *x
            }
        }
        match check_associativity(&Failing, &1, &2, &3, &Tolerance::exact()).unwrap_err() {
            Error::LawEvaluation { inputs, source } => {
                assert_eq!(inputs, "[1,2,3]");
                assert_eq!(*source, Error::SingularDenominator);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
