//! The Kummer surface of a genus-2 Jacobian and its two-valued group.
//!
//! A Kummer point `(x0:x2:x4:x6)` is the class of `(℘33 : ℘13 : ℘11 : 1)`;
//! it forgets the sign of the divisor. Products are computed by lifting both
//! factors to divisors, adding and subtracting with Cantor's algorithm and
//! embedding the results back.

use serde_json::Value;

use super::curve::{cantor_add, cantor_neg, cantor_sub, coincident, CurveG2, MumfordDivisor, BRANCH_THRESHOLD};
use super::wp::{pair_form, wp_from_divisor, wp_jet_derivative, Direction};
use crate::error::{Error, Result};
use crate::law::NValuedLaw;
use crate::multiset::{Approx, Encode, MultiValue};
use crate::proj::{proj_equal, ProjPoint};
use crate::scalar::{solve_quadratic, Field, Scalar, Tolerance, C64};

pub type KummerPoint = ProjPoint<C64>;

/// Relative size of `x6` below which a Kummer point lies on the theta divisor.
pub const THETA_THRESHOLD: f64 = 1e-12;

/// `(1:0:0:0)`, the image of the neutral divisor.
pub fn unit_point<S: Scalar>() -> ProjPoint<S> {
    ProjPoint::new(vec![S::one(), S::zero(), S::zero(), S::zero()]).expect("nonzero")
}

pub fn kummer_embed(d: &MumfordDivisor, curve: &CurveG2) -> Result<KummerPoint> {
    match d.degree() {
        0 => Ok(unit_point()),
        1 => Err(Error::ThetaDivisor),
        _ => ProjPoint::new(wp_from_divisor(d, curve)?.kummer_vector().to_vec()),
    }
}

/// A divisor whose embedding is `k`; the other preimage is its negative.
///
/// The support comes from `s² − ℘11 s − ℘13`; one ordinate is a square root of
/// `f`, the other is fixed by the `℘33` formula and then checked against the curve.
pub fn kummer_lift(k: &KummerPoint, curve: &CurveG2, tol: &Tolerance) -> Result<MumfordDivisor> {
    if k.dim() != 3 {
        return Err(Error::DimensionMismatch { left: k.dim() + 1, right: 4 });
    }
    if proj_equal(k, &unit_point(), tol)? {
        return Ok(MumfordDivisor::neutral());
    }
    let x = k.coords();
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if x[3].norm() <= THETA_THRESHOLD * scale {
        return Err(Error::ThetaDivisor);
    }
    let (wp33, wp13, wp11) = (x[0] / x[3], x[1] / x[3], x[2] / x[3]);
    let roots = solve_quadratic(&C64::new(1.0, 0.0), &-wp11, &-wp13)?;
    let (mut s1, mut s2) = (roots.elements()[0], roots.elements()[1]);
    if coincident(s1, s2) {
        return Err(Error::CoincidentSupport);
    }
    if curve.f(s1).norm() < curve.f(s2).norm() {
        std::mem::swap(&mut s1, &mut s2);
    }
    let f1 = curve.f(s1);
    if f1.norm() <= BRANCH_THRESHOLD * 1f64.max(s1.norm().powi(5)) {
        return Err(Error::BranchPoint);
    }
    let mu1 = f1.sqrt();
    let mu2 = (pair_form(&s1, &s2, curve) - wp33 * (s1 - s2).powi(2)) / (mu1 * 2.0);
    let residual = curve.residual(s2, mu2);
    if residual > tol.rel.max(tol.abs) {
        return Err(Error::InconsistentKummerPoint { residual });
    }
    MumfordDivisor::from_points(s1, mu1, s2, mu2)
}

/// `xᵀ J y = −x0 y6 − x2 y4 + x4 y2 + x6 y0` on coordinate vectors `(x0, x2, x4, x6)`.
pub fn m_pairing<S: Field>(x: &[S], y: &[S]) -> S {
    x[2].clone() * y[1].clone() + x[3].clone() * y[0].clone() - x[0].clone() * y[3].clone() - x[1].clone() * y[2].clone()
}

/// `(xᵀ J y)²`.
pub fn z12<S: Field>(x: &[S], y: &[S]) -> S {
    m_pairing(x, y).square()
}

/// Coefficients of the product of the binary cubics
/// `x0 t3³ + x2 t3² t1 + x4 t3 t1² + x6 t1³` with coefficient vectors `p` and `q`.
pub fn gamma3<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    let (a, b) = (p.coords(), q.coords());
    let mut z = vec![S::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            z[i + j] = z[i + j].clone() + x.clone() * y.clone();
        }
    }
    ProjPoint::new(z)
}

/// `(φ_kl, ψ_kl)` at `(u, v)`, so that `℘_kl(u ± v) = φ_kl ∓ ψ_kl`.
///
/// With `M = X(u)ᵀ J X(v)`:
/// `φ_kl = ℘_kl(u) − (M · X_kl(u)ᵀ J X(v) − (X_k(u)ᵀ J X(v))(X_l(u)ᵀ J X(v))) / (2M²)` and
/// `ψ_kl = (M · X_l(u)ᵀ J X_k(v) − (X_l(u)ᵀ J X(v))(X(u)ᵀ J X_k(v))) / (2M²)`.
pub fn phi_psi(
    du: &MumfordDivisor,
    dv: &MumfordDivisor,
    k: Direction,
    l: Direction,
    curve: &CurveG2,
) -> Result<(C64, C64)> {
    let ju = wp_from_divisor(du, curve)?;
    let jv = wp_from_divisor(dv, curve)?;
    let xu = ju.kummer_vector();
    let xv = jv.kummer_vector();
    let xk_u = ju.kummer_vector_derivative(k);
    let xl_u = ju.kummer_vector_derivative(l);
    let xkl_u = wp_jet_derivative(du, l, curve)?.kummer_vector_derivative(k);
    let xk_v = jv.kummer_vector_derivative(k);

    let m = m_pairing(&xu, &xv);
    let scale = xu.iter().chain(&xv).map(|c| c.norm()).fold(1.0, f64::max);
    if m.norm() <= 1e-12 * scale * scale {
        return Err(Error::SingularPairing);
    }
    let den = m * m * 2.0;
    let phi = ju.second(k, l) - (m * m_pairing(&xkl_u, &xv) - m_pairing(&xk_u, &xv) * m_pairing(&xl_u, &xv)) / den;
    let psi = (m * m_pairing(&xl_u, &xk_v) - m_pairing(&xl_u, &xv) * m_pairing(&xu, &xk_v)) / den;
    Ok((phi, psi))
}

/// `{[u+v], [u−v]}` together with the product of their cubics.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerProduct {
    pub points: MultiValue<KummerPoint>,
    pub cubic: ProjPoint<C64>,
}

impl Encode for KummerProduct {
    fn encode_json(&self) -> Value {
        serde_json::json!({
            "points": self.points.encode_json(),
            "cubic": self.cubic.encode_json(),
        })
    }
}

pub fn kummer_mul(x: &KummerPoint, y: &KummerPoint, curve: &CurveG2, tol: &Tolerance) -> Result<KummerProduct> {
    let du = kummer_lift(x, curve, tol)?;
    let dv = kummer_lift(y, curve, tol)?;
    let plus = kummer_embed(&cantor_add(&du, &dv, curve)?, curve)?;
    let minus = kummer_embed(&cantor_sub(&du, &dv, curve)?, curve)?;
    let cubic = gamma3(&plus, &minus)?;
    Ok(KummerProduct { points: MultiValue::pair(plus, minus), cubic })
}

/// The two-valued group on the Kummer surface of `curve`.
#[derive(Debug, Clone)]
pub struct KummerLaw {
    pub curve: CurveG2,
    /// Tolerance of the lift's curve-membership check.
    pub lift_tol: Tolerance,
}

impl KummerLaw {
    pub fn new(curve: CurveG2) -> Self {
        KummerLaw { curve, lift_tol: Tolerance::uniform(1e-6) }
    }
}

impl NValuedLaw for KummerLaw {
    type Elem = KummerPoint;

    fn name(&self) -> String {
        "kummer".into()
    }
    fn arity(&self) -> usize {
        2
    }
    fn product(&self, x: &KummerPoint, y: &KummerPoint) -> Result<MultiValue<KummerPoint>> {
        Ok(kummer_mul(x, y, &self.curve, &self.lift_tol)?.points)
    }
    fn unit(&self) -> KummerPoint {
        unit_point()
    }
    fn inverse(&self, x: &KummerPoint) -> KummerPoint {
        x.clone()
    }
}

/// The unordered pair `{D, −D}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KummerClass {
    pub rep: MumfordDivisor,
}

impl Approx for KummerClass {
    fn distance(&self, other: &Self) -> f64 {
        self.rep.distance(&other.rep).min(self.rep.distance(&cantor_neg(&other.rep)))
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.distance(other) <= tol.rel.max(tol.abs)
    }
}

impl Encode for KummerClass {
    fn encode_json(&self) -> Value {
        self.rep.encode_json()
    }
}

/// `{[a ⊕ b], [a ⊖ b]}` for divisor classes `a`, `b`.
pub fn semistable_mul(a: &MumfordDivisor, b: &MumfordDivisor, curve: &CurveG2) -> Result<MultiValue<KummerClass>> {
    Ok(MultiValue::pair(
        KummerClass { rep: cantor_add(a, b, curve)? },
        KummerClass { rep: cantor_sub(a, b, curve)? },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus2::curve::tests::{curve, random_divisor};
    use crate::genus2::wp::SupportPoints;
    use crate::law::{check_associativity, check_inverse, check_unit};
    use crate::multiset::multiset_equal;
    use crate::rational_kummer::{kummer_vector0, sigma0, UPoint};
    use crate::sampling::{axiom_suite, sample_rng, SuiteConfig};
    use crate::scalar::Q;
    use proptest::prelude::*;

    const DIRS: [(Direction, Direction); 3] =
        [(Direction::U1, Direction::U1), (Direction::U1, Direction::U3), (Direction::U3, Direction::U3)];

    fn near(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
    }

    fn pt(v: [f64; 4]) -> KummerPoint {
        ProjPoint::new(v.iter().map(|&x| C64::new(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn embed_is_even_and_lift_recovers_the_class() {
        let c = curve();
        let tol = Tolerance::uniform(1e-8);
        for i in 0..200 {
            let d = random_divisor(&mut sample_rng(41, i), &c);
            let k = kummer_embed(&d, &c).unwrap();
            assert_eq!(k, kummer_embed(&cantor_neg(&d), &c).unwrap());
            let back = kummer_lift(&k, &c, &tol).unwrap();
            let class = KummerClass { rep: d.clone() };
            assert!(class.approx_eq(&KummerClass { rep: back.clone() }, &tol), "sample {i}");
            assert!(proj_equal(&kummer_embed(&back, &c).unwrap(), &k, &tol).unwrap());
        }
    }

    #[test]
    fn lift_rejects_theta_and_off_surface_points() {
        let c = curve();
        let tol = Tolerance::uniform(1e-8);
        assert_eq!(kummer_lift(&pt([1.0, 2.0, 3.0, 0.0]), &c, &tol), Err(Error::ThetaDivisor));
        assert!(kummer_lift(&unit_point(), &c, &tol).unwrap().is_neutral());
        let k = kummer_embed(&random_divisor(&mut sample_rng(1, 2), &c), &c).unwrap();
        let mut x = k.coords().to_vec();
        let shift = C64::new(0.5, 0.0) * x[3];
        x[0] += shift;
        let err = kummer_lift(&ProjPoint::new(x).unwrap(), &c, &tol);
        assert!(matches!(err, Err(Error::InconsistentKummerPoint { .. })));
        assert_eq!(kummer_embed(&MumfordDivisor::from_point(C64::new(1.0, 0.0), c.f(C64::new(1.0, 0.0)).sqrt()), &c),
            Err(Error::ThetaDivisor));
    }

    #[test]
    fn pairing_basics() {
        let x = [1.0, 2.0, 3.0, 4.0].map(|v| C64::new(v, 0.0));
        assert_eq!(m_pairing(&x, &x), C64::new(0.0, 0.0));
        let y = [0.0, 1.0, 0.0, 0.0].map(|v| C64::new(v, 0.0));
        assert_eq!(m_pairing(&x, &y), C64::new(3.0, 0.0));
        assert_eq!(z12(&x, &y), C64::new(9.0, 0.0));
    }

    #[test]
    fn rational_limit_pairing_example() {
        let q = |n: i64, d: i64| Q::new(n.into(), d.into());
        let (u, v) = (UPoint::new(q(1, 1), q(0, 1)), UPoint::new(q(0, 1), q(1, 1)));
        let (xu, xv) = (kummer_vector0(&u), kummer_vector0(&v));
        assert_eq!(xu, [q(1, 1), q(-1, 1), q(1, 3), q(1, 9)]);
        assert_eq!(xv, [q(1, 1), q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(m_pairing(&xu, &xv), q(-8, 9));
        assert_eq!(sigma0(&u.add(&v)) * sigma0(&u.sub(&v)), q(-8, 9));
        assert_eq!(kummer_vector0(&UPoint::new(q(1, 1), q(1, 1))), [q(1, 1), q(-1, 1), q(7, 3), q(4, 9)]);
    }

    #[test]
    fn gamma3_examples() {
        let g = gamma3(&pt([1.0, 0.0, 0.0, 0.0]), &pt([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(g, ProjPoint::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0].map(|v| C64::new(v, 0.0)).to_vec()).unwrap());
        let g = gamma3(&pt([1.0, 1.0, 1.0, 1.0]), &pt([1.0, 0.0, 0.0, 1.0])).unwrap();
        let want = [1.0, 1.0, 1.0, 2.0, 1.0, 1.0, 1.0].map(|v| C64::new(v, 0.0));
        assert_eq!(g.coords(), &want);
        let (p, q) = (pt([1.0, -2.0, 0.5, 3.0]), pt([0.0, 1.0, 4.0, -1.0]));
        assert_eq!(gamma3(&p, &q).unwrap(), gamma3(&q, &p).unwrap());
    }

    #[test]
    fn phi_psi_matches_cantor() {
        let c = curve();
        let mut checked = 0;
        for i in 0..100 {
            let mut rng = sample_rng(51, i);
            let (du, dv) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
            let (Ok(plus), Ok(minus)) = (cantor_add(&du, &dv, &c), cantor_sub(&du, &dv, &c)) else { continue };
            let (Ok(jp), Ok(jm)) = (wp_from_divisor(&plus, &c), wp_from_divisor(&minus, &c)) else { continue };
            for (k, l) in DIRS {
                let (phi, psi) = phi_psi(&du, &dv, k, l, &c).unwrap();
                assert!(near(jp.second(k, l), phi - psi, 1e-7), "sample {i} ({k:?},{l:?})");
                assert!(near(jm.second(k, l), phi + psi, 1e-7), "sample {i} ({k:?},{l:?})");
                let (phi_n, psi_n) = phi_psi(&du, &cantor_neg(&dv), k, l, &c).unwrap();
                assert!(near(phi_n, phi, 1e-9) && near(psi_n, -psi, 1e-9));
            }
            checked += 1;
        }
        assert!(checked >= 95);
    }

    #[test]
    fn pairing_vanishes_when_the_sum_is_on_the_theta_divisor() {
        let c = curve();
        let du = random_divisor(&mut sample_rng(61, 0), &c);
        let s = C64::new(0.3, -0.2);
        let p = MumfordDivisor::from_point(s, c.f(s).sqrt());
        let dv = cantor_sub(&p, &du, &c).unwrap();
        assert_eq!(cantor_add(&du, &dv, &c).unwrap().degree(), 1);
        let (xu, xv) = (kummer_embed(&du, &c).unwrap(), kummer_embed(&dv, &c).unwrap());
        let m = m_pairing(&xu.normalized().coords().to_vec(), &xv.normalized().coords().to_vec());
        assert!(m.norm() < 1e-9, "M = {m}");
        assert_eq!(phi_psi(&du, &dv, Direction::U1, Direction::U1, &c), Err(Error::SingularPairing));
    }

    #[test]
    fn unit_square_and_branch_independence() {
        let c = curve();
        let tol = Tolerance::uniform(1e-7);
        let lift_tol = Tolerance::uniform(1e-6);
        let e = unit_point();
        for i in 0..100 {
            let mut rng = sample_rng(71, i);
            let (du, dv) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
            let (x, y) = (kummer_embed(&du, &c).unwrap(), kummer_embed(&dv, &c).unwrap());
            let with_unit = kummer_mul(&x, &e, &c, &lift_tol).unwrap().points;
            assert!(multiset_equal(&with_unit, &MultiValue::pair(x.clone(), x.clone()), &tol).unwrap());
            let square = kummer_mul(&x, &x, &c, &lift_tol);
            if let Ok(square) = square {
                assert!(square.points.iter().any(|p| proj_equal(p, &e, &tol).unwrap()));
            }
            let Ok(prod) = kummer_mul(&x, &y, &c, &lift_tol) else { continue };
            // the other branch of the lift of x
            let (Ok(p), Ok(m)) = (cantor_add(&cantor_neg(&du), &dv, &c), cantor_sub(&cantor_neg(&du), &dv, &c)) else {
                continue;
            };
            let other = MultiValue::pair(kummer_embed(&p, &c).unwrap(), kummer_embed(&m, &c).unwrap());
            assert!(multiset_equal(&prod.points, &other, &tol).unwrap(), "sample {i}");
            let [a, b] = [&prod.points.elements()[0], &prod.points.elements()[1]];
            assert_eq!(prod.cubic, gamma3(a, b).unwrap());
        }
    }

    #[test]
    fn semistable_agrees_with_kummer_mul() {
        let c = curve();
        let tol = Tolerance::uniform(1e-7);
        let lift_tol = Tolerance::uniform(1e-6);
        let mut rng = sample_rng(81, 0);
        let (a, b) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
        let unit = semistable_mul(&MumfordDivisor::neutral(), &b, &c).unwrap();
        let bb = KummerClass { rep: b.clone() };
        assert!(unit.iter().all(|k| k.approx_eq(&bb, &tol)));
        let square = semistable_mul(&a, &a, &c).unwrap();
        assert!(square.iter().any(|k| k.rep.is_neutral()));
        for i in 0..100 {
            let mut rng = sample_rng(82, i);
            let (a, b) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
            let Ok(classes) = semistable_mul(&a, &b, &c) else { continue };
            let Ok(embedded) = classes.clone().map(|k| kummer_embed(&k.rep, &c)).into_elements().into_iter().collect::<Result<Vec<_>>>()
            else {
                continue;
            };
            let (x, y) = (kummer_embed(&a, &c).unwrap(), kummer_embed(&b, &c).unwrap());
            let Ok(prod) = kummer_mul(&x, &y, &c, &lift_tol) else { continue };
            assert!(multiset_equal(&prod.points, &MultiValue::new(embedded).unwrap(), &tol).unwrap());
        }
    }

    #[test]
    fn kummer_law_axioms() {
        let tol = Tolerance::uniform(1e-6);
        for seed in 0..3 {
            let c = CurveG2::random(&mut sample_rng(1000 + seed, 0), 1.0);
            let law = KummerLaw::new(c);
            let cfg = SuiteConfig::new(20, seed, tol);
            let reports = axiom_suite(&law, &cfg, |rng| kummer_embed(&MumfordDivisor::random(rng, &c, 2.0)?, &c)).unwrap();
            for r in &reports {
                assert!(r.passed(), "{}", r.to_json());
            }
        }
        let c = curve();
        let law = KummerLaw::new(c);
        let x = kummer_embed(&random_divisor(&mut sample_rng(2, 2), &c), &c).unwrap();
        assert!(check_unit(&law, &x, &tol).unwrap().passed());
        assert!(check_inverse(&law, &x, &tol).unwrap().passed());
        let mut rng = sample_rng(3, 3);
        let (y, z) = (random_divisor(&mut rng, &c), random_divisor(&mut rng, &c));
        let (y, z) = (kummer_embed(&y, &c).unwrap(), kummer_embed(&z, &c).unwrap());
        assert!(check_associativity(&law, &x, &y, &z, &tol).unwrap().passed());
    }

    #[test]
    fn support_round_trip() {
        let c = curve();
        let d = random_divisor(&mut sample_rng(9, 9), &c);
        assert_eq!(SupportPoints::of(&d).unwrap().to_divisor().unwrap().degree(), 2);
    }

    fn rational() -> impl Strategy<Value = Q> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Q::new(n.into(), d.into()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rational_limit_addition_theorem(a in rational(), b in rational(), c in rational(), d in rational()) {
            let (u, v) = (UPoint::new(a, b), UPoint::new(c, d));
            let (xu, xv) = (kummer_vector0(&u), kummer_vector0(&v));
            let m = m_pairing(&xu, &xv);
            prop_assert_eq!(m.clone(), sigma0(&u.add(&v)) * sigma0(&u.sub(&v)));
            let p = ProjPoint::new(kummer_vector0(&u.add(&v)).to_vec());
            let q = ProjPoint::new(kummer_vector0(&u.sub(&v)).to_vec());
            if let (Ok(p), Ok(q)) = (p, q) {
                let g = gamma3(&p, &q).unwrap();
                prop_assert_eq!(g.coords()[6].clone(), z12(&xu, &xv));
            }
        }

        #[test]
        fn gamma3_is_exact_convolution(a in prop::array::uniform4(rational()), b in prop::array::uniform4(rational())) {
            let (Ok(p), Ok(q)) = (ProjPoint::new(a.to_vec()), ProjPoint::new(b.to_vec())) else { return Ok(()) };
            let g = gamma3(&p, &q).unwrap();
            for m in 0..7usize {
                let mut want = Q::from_integer(0.into());
                for i in 0..4usize {
                    if m >= i && m - i < 4 {
                        want += a[i].clone() * b[m - i].clone();
                    }
                }
                prop_assert_eq!(g.coords()[m].clone(), want);
            }
        }
    }
}
