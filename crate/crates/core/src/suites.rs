//! Seeded axiom suites for every law, shared by the command line and the
//! acceptance tests.
//!
//! Inputs are drawn so that exact runs stay inside the rationals: squares for
//! `p2`, orbit coordinates for the groupoids, embedded `u`-points for the
//! quadric and rational Kummer laws. The genus-2 Kummer law is float only.

use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::elementary::{orbit_coordinate, FiberPoint, Groupoid1, Groupoid2, ZPlus, P2};
use crate::elliptic::{affine_point, CurveG1, Cp1Law};
use crate::error::{Error, Result};
use crate::genus2::{kummer_embed, CurveG2, KummerLaw, MumfordDivisor};
use crate::law::{check_inverse, check_unit, CheckReport};
use crate::multiset::{Approx, Encode};
use crate::rational_kummer::{hat_embed, quadric_embed, QuadricLaw, RationalKummerLaw, UPoint};
use crate::sampling::{axiom_suite, groupoid_suite, run_samples, sample_rng, Sample, SuiteConfig};
use crate::scalar::{Scalar, Tolerance, C64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawId {
    P2,
    ZPlus,
    Groupoid1,
    Groupoid2,
    Cp1,
    Eg,
    Rk,
    Kummer,
}

impl LawId {
    pub const ALL: [LawId; 8] =
        [LawId::P2, LawId::ZPlus, LawId::Groupoid1, LawId::Groupoid2, LawId::Cp1, LawId::Eg, LawId::Rk, LawId::Kummer];

    pub fn name(self) -> &'static str {
        match self {
            LawId::P2 => "p2",
            LawId::ZPlus => "zplus",
            LawId::Groupoid1 => "groupoid1",
            LawId::Groupoid2 => "groupoid2",
            LawId::Cp1 => "cp1",
            LawId::Eg => "eg",
            LawId::Rk => "rk",
            LawId::Kummer => "kummer",
        }
    }

    pub fn is_groupoid(self) -> bool {
        matches!(self, LawId::Groupoid1 | LawId::Groupoid2)
    }
}

impl FromStr for LawId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LawId::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown law {s:?}; expected one of p2, zplus, groupoid1, groupoid2, cp1, eg, rk, kummer")))
    }
}

/// Law parameters as JSON scalars, decoded in whichever field the run uses.
/// Missing parameters are drawn from the seed.
#[derive(Debug, Clone, Default)]
pub struct LawParams {
    pub g2: Option<Value>,
    pub g3: Option<Value>,
    /// Fiber parameters `λ` (groupoid1) or `λ₁, λ₂` (groupoid2).
    pub lambda: Option<Vec<Value>>,
    pub curve: Option<CurveG2>,
    /// Random curves per run when no curve is given.
    pub curves: usize,
    /// Random fibers per run when no fiber is given; the samples are shared among them.
    pub fibers: usize,
}

impl LawParams {
    pub fn new() -> Self {
        LawParams { curves: 1, fibers: 5, ..Default::default() }
    }
}

/// Stream indices reserved for parameter draws, far from the sample indices.
const PARAM_STREAM: u64 = 1 << 40;

fn param_rng(cfg: &SuiteConfig, k: usize) -> ChaCha8Rng {
    sample_rng(cfg.seed, PARAM_STREAM + k as u64)
}

/// Config for the `k`-th curve or fiber of a run.
fn shifted(cfg: &SuiteConfig, k: usize) -> SuiteConfig {
    SuiteConfig { seed: cfg.seed.wrapping_add(k as u64 * 0x9E37_79B9), ..cfg.clone() }
}

/// The `k`-th of `n` fibers gets its share of the run's samples.
fn fiber_share(cfg: &SuiteConfig, k: usize, n: usize) -> SuiteConfig {
    let samples = cfg.samples / n + usize::from(k < cfg.samples % n);
    SuiteConfig { samples, ..shifted(cfg, k) }
}

fn merge_all(groups: Vec<Vec<CheckReport>>) -> Vec<CheckReport> {
    let mut it = groups.into_iter();
    let mut acc = it.next().unwrap_or_default();
    for g in it {
        acc = acc.into_iter().zip(g).map(|(a, b)| a.merge(b)).collect();
    }
    acc
}

/// Runs the axiom suites of one law. Exact runs use rational arithmetic; the
/// `cp1` exact run checks the unit and inverse laws only, since its products
/// of rational points generally have irrational roots.
pub fn run_law_suite(law: LawId, params: &LawParams, exact: bool, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    match (law, exact) {
        (LawId::ZPlus, _) => zplus_suite(cfg),
        (LawId::Kummer, true) => Err(Error::DomainError("the genus-2 Kummer law has no exact mode".into())),
        (LawId::Kummer, false) => kummer_suite(params, cfg),
        (_, true) => field_suite::<Q>(law, params, cfg),
        (_, false) => field_suite::<C64>(law, params, cfg),
    }
}

fn field_suite<S: Scalar + Sample + Approx + Encode>(law: LawId, params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    match law {
        LawId::P2 => p2_suite::<S>(cfg),
        LawId::Groupoid1 => groupoid1_suite::<S>(params, cfg),
        LawId::Groupoid2 => groupoid2_suite::<S>(params, cfg),
        LawId::Cp1 => cp1_suite::<S>(params, cfg),
        LawId::Eg => Ok(axiom_suite(&QuadricLaw::<S>::new(selection_tol::<S>()), cfg, |rng| Ok(quadric_embed(&draw_u::<S>(rng))))?.to_vec()),
        LawId::Rk => Ok(axiom_suite(&RationalKummerLaw::<S>::new(selection_tol::<S>()), cfg, |rng| Ok(hat_embed(&draw_u::<S>(rng))))?.to_vec()),
        LawId::ZPlus | LawId::Kummer => unreachable!("dispatched in run_law_suite"),
    }
}

/// Tolerance for choosing among candidate root pairings. Looser than the
/// comparison tolerance: the choice only has to separate the right pairing
/// from the wrong ones, whose residuals are of order one.
pub fn selection_tol<S: Scalar>() -> Tolerance {
    if S::EXACT {
        Tolerance::exact()
    } else {
        Tolerance::uniform(1e-6)
    }
}

fn draw_u<S: Scalar + Sample>(rng: &mut ChaCha8Rng) -> UPoint<S> {
    UPoint::new(S::sample(rng), S::sample(rng))
}

pub fn zplus_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    Ok(axiom_suite(&ZPlus, cfg, |rng| Ok(rng.random_range(0..1000u64)))?.to_vec())
}

/// Arguments are squares, so both square roots stay in the field.
pub fn p2_suite<S: Scalar + Sample + Approx + Encode>(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    Ok(axiom_suite(&P2::<S>::default(), cfg, |rng| Ok(S::sample(rng).square()))?.to_vec())
}

fn fiber_params<S: Scalar + Sample, const N: usize>(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<[S; N]>> {
    match &params.lambda {
        Some(vals) => {
            if vals.len() != N {
                return Err(Error::Parse(format!("expected {N} fiber parameter(s), got {}", vals.len())));
            }
            let decoded = vals.iter().map(S::decode).collect::<Result<Vec<S>>>()?;
            Ok(vec![decoded.try_into().map_err(|_| Error::Parse("fiber parameters".into()))?])
        }
        None => Ok((0..params.fibers.max(1))
            .map(|k| {
                let mut rng = param_rng(cfg, k);
                std::array::from_fn(|_| S::sample(&mut rng))
            })
            .collect()),
    }
}

/// Fiber coordinate of a random class `{u, I(u)}` over `λ₁`.
fn fiber_triple<S: Scalar + Sample, const N: usize>(
    rng: &mut ChaCha8Rng,
    fiber: &[S; N],
) -> Result<(FiberPoint<S, N>, FiberPoint<S, N>, FiberPoint<S, N>)> {
    let point = |rng: &mut ChaCha8Rng| -> Result<FiberPoint<S, N>> {
        Ok(FiberPoint::new(orbit_coordinate(&S::sample(rng), &fiber[0])?, fiber.clone()))
    };
    Ok((point(rng)?, point(rng)?, point(rng)?))
}

pub fn groupoid1_suite<S: Scalar + Sample>(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let g = Groupoid1::<S>::default();
    let fibers = fiber_params::<S, 1>(params, cfg)?;
    let groups = fibers
        .iter()
        .enumerate()
        .map(|(k, fiber)| Ok(vec![groupoid_suite(&g, &fiber_share(cfg, k, fibers.len()), |rng| fiber_triple(rng, fiber))?]))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_all(groups))
}

pub fn groupoid2_suite<S: Scalar + Sample>(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let g = Groupoid2::<S>::new(cfg.tol);
    let fibers = fiber_params::<S, 2>(params, cfg)?;
    let groups = fibers
        .iter()
        .enumerate()
        .map(|(k, fiber)| Ok(vec![groupoid_suite(&g, &fiber_share(cfg, k, fibers.len()), |rng| fiber_triple(rng, fiber))?]))
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_all(groups))
}

/// A nonsingular cubic with coefficients drawn from the field's sampler.
pub fn random_cubic<S: Scalar + Sample>(rng: &mut ChaCha8Rng) -> CurveG1<S> {
    loop {
        let c = CurveG1::new(S::sample(rng), S::sample(rng));
        if c.discriminant().magnitude() > 1e-3 {
            return c;
        }
    }
}

fn cp1_curves<S: Scalar + Sample>(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CurveG1<S>>> {
    match (&params.g2, &params.g3) {
        (None, None) => Ok((0..params.curves.max(1)).map(|k| random_cubic(&mut param_rng(cfg, k))).collect()),
        (g2, g3) => {
            let get = |v: &Option<Value>| v.as_ref().map(S::decode).unwrap_or_else(|| Ok(S::zero()));
            Ok(vec![CurveG1::new(get(g2)?, get(g3)?)])
        }
    }
}

pub fn cp1_suite<S: Scalar + Sample + Approx + Encode>(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let curves = cp1_curves::<S>(params, cfg)?;
    let groups = curves
        .into_iter()
        .enumerate()
        .map(|(k, curve)| {
            let law = Cp1Law::new(curve);
            let cfg = shifted(cfg, k);
            let draw = |rng: &mut ChaCha8Rng| affine_point(S::sample(rng));
            if S::EXACT {
                Ok(vec![
                    run_samples("cp1 unit", &cfg, |rng| check_unit(&law, &draw(rng), &cfg.tol))?,
                    run_samples("cp1 inverse", &cfg, |rng| check_inverse(&law, &draw(rng), &cfg.tol))?,
                ])
            } else {
                Ok(axiom_suite(&law, &cfg, |rng| Ok(draw(rng)))?.to_vec())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_all(groups))
}

/// Kummer images of random divisors; the curve is drawn when none is given.
pub fn kummer_suite(params: &LawParams, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let curves = match params.curve {
        Some(c) => vec![c],
        None => (0..params.curves.max(1)).map(|k| CurveG2::random(&mut param_rng(cfg, k), 1.0)).collect(),
    };
    let groups = curves
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let law = KummerLaw::new(c);
            Ok(axiom_suite(&law, &shifted(cfg, k), |rng| kummer_embed(&MumfordDivisor::random(rng, &c, 2.0)?, &c))?.to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(merge_all(groups))
}
