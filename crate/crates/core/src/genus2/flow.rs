//! Kowalevski trajectories: the straight line `u1 = c1 + i t`, `u3 = c3` on the
//! Jacobian, followed through its divisor coordinates.
//!
//! The line's offset `(c1, c3)` is fixed implicitly by an initial divisor, since
//! no period lattice is available. The state `(s1, μ1, s2, μ2)` is advanced by
//! classical RK4 along `i ∂/∂u1`. As an independent check, the Abel integrals
//! `Σ ∫ ds/(2μ)` and `Σ ∫ s ds/(2μ)` are accumulated by Gauss–Legendre quadrature
//! over each step's chords; they must come out as `0` and `i t`.

use serde::Serialize;

use super::curve::{coincident, CurveG2, MumfordDivisor, BRANCH_THRESHOLD};
use super::wp::{velocity, Direction, SupportPoints};
use crate::error::{Error, Result};
use crate::multiset::Encode;
use crate::scalar::C64;

/// Nodes and weights of five-point Gauss–Legendre quadrature on `[0, 1]`.
const GAUSS5: [(f64, f64); 5] = [
    (0.046_910_077_030_668_0, 0.118_463_442_528_094_5),
    (0.230_765_344_947_158_5, 0.239_314_335_249_683_2),
    (0.5, 0.284_444_444_444_444_4),
    (0.769_234_655_052_841_5, 0.239_314_335_249_683_2),
    (0.953_089_922_969_332_0, 0.118_463_442_528_094_5),
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    /// Parameter reached.
    pub t: f64,
    pub steps: usize,
    #[serde(serialize_with = "encode_divisor")]
    pub divisor: MumfordDivisor,
    /// `|Σ ∫ ds/(2μ)|`, the drift of `u3`.
    pub u3_residual: f64,
    /// `|Σ ∫ s ds/(2μ) − i t|`, the drift of `u1` from its prescribed value.
    pub u1_residual: f64,
    /// Largest relative defect of `μ² = f(s)` seen along the way.
    pub curve_residual: f64,
}

fn encode_divisor<S: serde::Serializer>(d: &MumfordDivisor, s: S) -> std::result::Result<S::Ok, S::Error> {
    d.encode_json().serialize(s)
}

fn rhs(p: &SupportPoints<C64>, curve: &CurveG2) -> SupportPoints<C64> {
    let i = C64::new(0.0, 1.0);
    let v = velocity(p, Direction::U1, curve);
    SupportPoints { s1: v.s1 * i, mu1: v.mu1 * i, s2: v.s2 * i, mu2: v.mu2 * i }
}

fn axpy(p: &SupportPoints<C64>, h: f64, k: &SupportPoints<C64>) -> SupportPoints<C64> {
    SupportPoints { s1: p.s1 + k.s1 * h, mu1: p.mu1 + k.mu1 * h, s2: p.s2 + k.s2 * h, mu2: p.mu2 + k.mu2 * h }
}

fn rk4_step(p: &SupportPoints<C64>, h: f64, curve: &CurveG2) -> SupportPoints<C64> {
    let k1 = rhs(p, curve);
    let k2 = rhs(&axpy(p, h / 2.0, &k1), curve);
    let k3 = rhs(&axpy(p, h / 2.0, &k2), curve);
    let k4 = rhs(&axpy(p, h, &k3), curve);
    let comb = |a: C64, b: C64, c: C64, d: C64| (a + (b + c) * 2.0 + d) * (h / 6.0);
    SupportPoints {
        s1: p.s1 + comb(k1.s1, k2.s1, k3.s1, k4.s1),
        mu1: p.mu1 + comb(k1.mu1, k2.mu1, k3.mu1, k4.mu1),
        s2: p.s2 + comb(k1.s2, k2.s2, k3.s2, k4.s2),
        mu2: p.mu2 + comb(k1.mu2, k2.mu2, k3.mu2, k4.mu2),
    }
}

/// `(∫ ds/(2μ), ∫ s ds/(2μ))` along the chord from `(sa, μa)` to `(sb, μb)`,
/// with the branch of `μ` followed continuously from the endpoints.
fn chord_integrals(sa: C64, mua: C64, sb: C64, mub: C64, curve: &CurveG2) -> (C64, C64) {
    let ds = sb - sa;
    let (mut i3, mut i1) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for (x, w) in GAUSS5 {
        let s = sa + ds * x;
        let guess = mua + (mub - mua) * x;
        let root = curve.f(s).sqrt();
        let mu = if (root - guess).norm() <= (root + guess).norm() { root } else { -root };
        i3 += ds * w / (mu * 2.0);
        i1 += ds * s * w / (mu * 2.0);
    }
    (i3, i1)
}

/// Follows the trajectory through `init` for parameter time `t1` with steps of
/// at most `dt`.
pub fn kowalevski_solution(init: &MumfordDivisor, t1: f64, dt: f64, curve: &CurveG2) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite() && t1.is_finite()) {
        return Err(Error::DomainError("step must be positive and times finite".into()));
    }
    let mut p = SupportPoints::of(init)?;
    for (s, mu) in [(p.s1, p.mu1), (p.s2, p.mu2)] {
        if mu.norm() <= BRANCH_THRESHOLD * 1f64.max(s.norm().powf(2.5)) {
            return Err(Error::BranchPoint);
        }
    }
    let steps = (t1.abs() / dt).ceil() as usize;
    let h = if steps == 0 { 0.0 } else { t1 / steps as f64 };
    let (mut du3, mut du1) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    let mut curve_residual = curve.residual(p.s1, p.mu1).max(curve.residual(p.s2, p.mu2));
    for n in 0..steps {
        let next = rk4_step(&p, h, curve);
        let t = (n + 1) as f64 * h;
        let finite = [next.s1, next.mu1, next.s2, next.mu2].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite || coincident(next.s1, next.s2) {
            return Err(Error::TrajectorySingular { t: n as f64 * h });
        }
        for (sa, mua, sb, mub) in [(p.s1, p.mu1, next.s1, next.mu1), (p.s2, p.mu2, next.s2, next.mu2)] {
            let (a3, a1) = chord_integrals(sa, mua, sb, mub, curve);
            du3 += a3;
            du1 += a1;
        }
        curve_residual = curve_residual.max(curve.residual(next.s1, next.mu1)).max(curve.residual(next.s2, next.mu2));
        if curve_residual > 1e-4 {
            return Err(Error::TrajectorySingular { t });
        }
        p = next;
    }
    Ok(Trajectory {
        t: t1,
        steps,
        divisor: p.to_divisor()?,
        u3_residual: du3.norm(),
        u1_residual: (du1 - C64::new(0.0, t1)).norm(),
        curve_residual,
    })
}
