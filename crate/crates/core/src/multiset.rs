//! Unordered n-element results and tolerance-aware multiset equality.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{close, Scalar, Tolerance, C64, Q};

/// Tolerance-aware comparison for the element type of a multiset.
pub trait Approx {
    /// Scale-aware distance; zero for identical values.
    fn distance(&self, other: &Self) -> f64;
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool;
}

/// JSON encoding used in reports and on the command line.
pub trait Encode {
    fn encode_json(&self) -> Value;
}

fn scalar_distance<S: Scalar>(a: &S, b: &S) -> f64 {
    let diff = (a.clone() - b.clone()).magnitude();
    diff / 1f64.max(a.magnitude()).max(b.magnitude())
}

impl Approx for C64 {
    fn distance(&self, other: &Self) -> f64 {
        scalar_distance(self, other)
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        close(self, other, tol)
    }
}

impl Approx for Q {
    fn distance(&self, other: &Self) -> f64 {
        scalar_distance(self, other)
    }
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }
}

impl Approx for u64 {
    fn distance(&self, other: &Self) -> f64 {
        self.abs_diff(*other) as f64
    }
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }
}

impl Encode for C64 {
    fn encode_json(&self) -> Value {
        self.encode()
    }
}

impl Encode for Q {
    fn encode_json(&self) -> Value {
        self.encode()
    }
}

impl Encode for u64 {
    fn encode_json(&self) -> Value {
        Value::from(*self)
    }
}

/// Componentwise comparison of fixed-size coordinate tuples.
impl<S: Scalar, const N: usize> Approx for [S; N] {
    fn distance(&self, other: &Self) -> f64 {
        self.iter().zip(other).map(|(a, b)| scalar_distance(a, b)).fold(0.0, f64::max)
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.iter().zip(other).all(|(a, b)| close(a, b, tol))
    }
}

impl<S: Scalar, const N: usize> Encode for [S; N] {
    fn encode_json(&self) -> Value {
        Value::Array(self.iter().map(Scalar::encode).collect())
    }
}

/// An unordered multiset of `arity` values: the codomain of an n-valued product.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiValue<T> {
    elements: Vec<T>,
}

impl<T> MultiValue<T> {
    pub fn new(elements: Vec<T>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::DomainError("a multivalue needs at least one element".into()));
        }
        Ok(MultiValue { elements })
    }

    pub fn pair(a: T, b: T) -> Self {
        MultiValue { elements: vec![a, b] }
    }

    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<T> {
        self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elements.iter()
    }

    pub fn map<U>(self, f: impl FnMut(T) -> U) -> MultiValue<U> {
        MultiValue { elements: self.elements.into_iter().map(f).collect() }
    }

    /// Concatenation; used to flatten `x * (y * z)` into an n²-multiset.
    pub fn flatten(parts: Vec<MultiValue<T>>) -> Result<Self> {
        MultiValue::new(parts.into_iter().flat_map(|m| m.elements).collect())
    }
}

impl<T: Clone> MultiValue<T> {
    /// `[x, ..., x]` with `n` copies.
    pub fn repeat(x: &T, n: usize) -> Self {
        MultiValue { elements: vec![x.clone(); n.max(1)] }
    }
}

impl<T: Encode> Encode for MultiValue<T> {
    fn encode_json(&self) -> Value {
        Value::Array(self.elements.iter().map(Encode::encode_json).collect())
    }
}

impl<'a, T> IntoIterator for &'a MultiValue<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

const EXHAUSTIVE_LIMIT: usize = 4;

/// True iff some perfect matching pairs every element of `a` with a distinct
/// element of `b` within `tol`. Exhaustive up to arity 4, greedy-then-verify above.
pub fn multiset_equal<T: Approx>(a: &MultiValue<T>, b: &MultiValue<T>, tol: &Tolerance) -> Result<bool> {
    check_arity(a, b)?;
    let n = a.arity();
    if n <= EXHAUSTIVE_LIMIT {
        let mut used = vec![false; n];
        Ok(match_from(0, a.elements(), b.elements(), &mut used, tol))
    } else {
        let pairing = greedy_pairing(a.elements(), b.elements());
        Ok(pairing.iter().enumerate().all(|(i, &j)| a.elements[i].approx_eq(&b.elements[j], tol)))
    }
}

/// Bottleneck distance: the smallest, over matchings, of the largest paired distance.
pub fn multiset_distance<T: Approx>(a: &MultiValue<T>, b: &MultiValue<T>) -> Result<f64> {
    check_arity(a, b)?;
    let n = a.arity();
    if n <= EXHAUSTIVE_LIMIT {
        let mut used = vec![false; n];
        Ok(bottleneck(0, a.elements(), b.elements(), &mut used))
    } else {
        let pairing = greedy_pairing(a.elements(), b.elements());
        Ok(pairing
            .iter()
            .enumerate()
            .map(|(i, &j)| a.elements[i].distance(&b.elements[j]))
            .fold(0.0, f64::max))
    }
}

fn check_arity<T>(a: &MultiValue<T>, b: &MultiValue<T>) -> Result<()> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch { left: a.arity(), right: b.arity() });
    }
    Ok(())
}

fn match_from<T: Approx>(i: usize, a: &[T], b: &[T], used: &mut [bool], tol: &Tolerance) -> bool {
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if !used[j] && a[i].approx_eq(&b[j], tol) {
            used[j] = true;
            if match_from(i + 1, a, b, used, tol) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

fn bottleneck<T: Approx>(i: usize, a: &[T], b: &[T], used: &mut [bool]) -> f64 {
    if i == a.len() {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            let d = a[i].distance(&b[j]).max(bottleneck(i + 1, a, b, used));
            used[j] = false;
            best = best.min(d);
        }
    }
    best
}

fn greedy_pairing<T: Approx>(a: &[T], b: &[T]) -> Vec<usize> {
    let mut used = vec![false; b.len()];
    a.iter()
        .map(|x| {
            let j = (0..b.len())
                .filter(|&j| !used[j])
                .min_by(|&i, &j| x.distance(&b[i]).total_cmp(&x.distance(&b[j])))
                .expect("arity checked");
            used[j] = true;
            j
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn permutation_is_equal() {
        let a = MultiValue::pair(re(1.0), re(2.0));
        let b = MultiValue::pair(re(2.0), re(1.0));
        assert!(multiset_equal(&a, &b, &Tolerance::default()).unwrap());
    }

    #[test]
    fn multiplicity_matters() {
        let a = MultiValue::pair(re(1.0), re(1.0));
        let b = MultiValue::pair(re(1.0), re(2.0));
        assert!(!multiset_equal(&a, &b, &Tolerance::default()).unwrap());
    }

    #[test]
    fn matching_under_tolerance() {
        // 0 pairs with 1e-12 (absolute), 4 with 4 + 1e-12 (relative)
        let a = MultiValue::pair(re(0.0), re(4.0 + 1e-12));
        let b = MultiValue::pair(re(4.0), re(1e-12));
        assert!(multiset_equal(&a, &b, &Tolerance::new(1e-9, 1e-9)).unwrap());
        assert!(!multiset_equal(&a, &b, &Tolerance::exact()).unwrap());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let a = MultiValue::pair(re(1.0), re(2.0));
        let b = MultiValue::new(vec![re(1.0)]).unwrap();
        assert_eq!(
            multiset_equal(&a, &b, &Tolerance::default()).unwrap_err(),
            Error::ArityMismatch { left: 2, right: 1 }
        );
    }

    #[test]
    fn greedy_path_for_large_arity() {
        let a = MultiValue::new((0..6).map(|i| re(i as f64)).collect()).unwrap();
        let b = MultiValue::new((0..6).rev().map(|i| re(i as f64 + 1e-13)).collect()).unwrap();
        assert!(multiset_equal(&a, &b, &Tolerance::default()).unwrap());
        assert!(multiset_distance(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn bottleneck_distance_picks_best_matching() {
        let a = MultiValue::pair(re(0.0), re(10.0));
        let b = MultiValue::pair(re(10.0), re(0.5));
        assert!((multiset_distance(&a, &b).unwrap() - 0.5).abs() < 1e-15);
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Q::from_ratio(n, d))
    }

    fn q_multiset() -> impl Strategy<Value = MultiValue<Q>> {
        prop::collection::vec(small_q(), 4).prop_map(|v| MultiValue::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn exact_equality_is_an_equivalence(a in q_multiset(), b in q_multiset(), c in q_multiset(), seed in 0usize..24) {
            let tol = Tolerance::exact();
            prop_assert!(multiset_equal(&a, &a, &tol).unwrap());
            prop_assert_eq!(multiset_equal(&a, &b, &tol).unwrap(), multiset_equal(&b, &a, &tol).unwrap());
            if multiset_equal(&a, &b, &tol).unwrap() && multiset_equal(&b, &c, &tol).unwrap() {
                prop_assert!(multiset_equal(&a, &c, &tol).unwrap());
            }
            // any reordering of a is equal to a
            let mut v = a.clone().into_elements();
            v.rotate_left(seed % 4);
            v.swap(0, seed % 3);
            prop_assert!(multiset_equal(&a, &MultiValue::new(v).unwrap(), &tol).unwrap());
        }
    }
}
