//! Printed formulas that fail their own consistency checks, each with the
//! replacement used by this crate and values that reproduce the discrepancy.
//!
//! Every reproduction value is recomputed on each call from the same code
//! paths the laws use, so the ledger cannot drift from the implementation.

use serde_json::{json, Value};

use crate::elementary::{groupoid2_coefficients, groupoid_via_group_law, orbit_coordinate};
use crate::error::Result;
use crate::genus2::wp::{pair_form, wp_jet, wp_jet_derivative, Direction, SupportPoints};
use crate::genus2::{CurveG2, MumfordDivisor};
use crate::rational_kummer::{
    hat_embed, hat_forward, hat_inverse, kummer_quartic_eval, printed_quartic_eval, quadric_embed, sigma0, UPoint,
};
use crate::scalar::{Dual, Field, FromComplex, Scalar, C64, Q};

fn q(n: i64, d: i64) -> Q {
    Q::from_ratio(n, d)
}

fn enc(x: &Q) -> Value {
    x.encode()
}

fn entry(id: &str, printed: &str, implemented: &str, reproduction: Value) -> Value {
    json!({ "id": id, "printed": printed, "implemented": implemented, "reproduction": reproduction })
}

/// Printed `B` and `G` of the two-parameter groupoid.
fn printed_groupoid2(x: &Q, y: &Q, l1: &Q, l2: &Q) -> (Q, Q) {
    let (xy, sum) = (x * y, x + y);
    let l1s = l1 * l1;
    let b = &xy * &xy * &l1s * l2 * (l2 - &l1s) + &xy * &sum * l2 * (q(2, 1) * l2 - q(3, 1) * l1) + q(2, 1) * &sum;
    let g = Q::one() + &xy * l2 * (&l1s - l2) + &xy * &sum * &l1s * l2 * l2 + &xy * &xy * l2 * l2 * l2 * (l2 - &l1s);
    (b, g)
}

fn groupoid2_entry() -> Result<Value> {
    let (u, v, l1, l2) = (q(1, 2), q(1, 3), q(1, 1), q(1, 5));
    let (x, y) = (orbit_coordinate(&u, &l1)?, orbit_coordinate(&v, &l1)?);
    let roots = groupoid_via_group_law(&u, &v, &l1, &l2)?;
    let residual = |b: &Q, g: &Q, c: &Q| -> Vec<Value> {
        roots.iter().map(|z| enc(&(g * z * z - b * z + c))).collect()
    };
    let (b, c, g) = groupoid2_coefficients(&x, &y, &l1, &l2);
    let (pb, pg) = printed_groupoid2(&x, &y, &l1, &l2);
    Ok(entry(
        "groupoid2-coefficients",
        "B = x²y²λ1²λ2(λ2 − λ1²) + xy(x+y)λ2(2λ2 − 3λ1) + 2(x+y), G = 1 + xyλ2(λ1² − λ2) + xy(x+y)λ1²λ2² + x²y²λ2³(λ2 − λ1²)",
        "B = 2(x+y) − (λ1² + 8λ2)xy + (λ1²λ2 + 2λ2²)xy(x+y) − λ1²λ2²x²y², G = 1 − (λ1²λ2 + 2λ2²)xy + λ1²λ2²xy(x+y) + λ2³(λ2 − λ1²)x²y², derived from the fiber group law (u+v−λ1uv)/(1−λ2uv)",
        json!({
            "u": enc(&u), "v": enc(&v), "lambda1": enc(&l1), "lambda2": enc(&l2),
            "group_law_roots": roots.iter().map(enc).collect::<Vec<_>>(),
            "printed_quadratic_at_roots": residual(&pb, &pg, &c),
            "implemented_quadratic_at_roots": residual(&b, &g, &c),
        }),
    ))
}

fn constraint_entry() -> Value {
    let [x2, x4, x6] = quadric_embed(&UPoint::new(q(1, 1), q(2, 1)));
    entry(
        "quadric-selection-constraint",
        "X2 X4 = X6²",
        "X2 X6 = X4², the equation of the quadric the products live on",
        json!({
            "point": [enc(&x2), enc(&x4), enc(&x6)],
            "printed_defect": enc(&(&x2 * &x4 - &x6 * &x6)),
            "implemented_defect": enc(&(&x2 * &x6 - &x4 * &x4)),
        }),
    )
}

/// `(−1, 7/3, 4/9)` is the hat image of `u = (1, 1)`.
pub fn quartic_counterexample() -> ([Q; 3], Q) {
    let p = hat_embed(&UPoint::new(q(1, 1), q(1, 1)));
    let value = printed_quartic_eval(&p);
    (p, value)
}

fn quartic_entry() -> Value {
    let (p, printed) = quartic_counterexample();
    entry(
        "kummer-quartic",
        "−9X4² − 36X2X6 + 12X2²X4 + 7X2⁴ = 0 in hat coordinates",
        "X4² + 4X2X6 − 2X2²X4 + X2⁴ = 0, obtained by exact substitution of the parametrization",
        json!({
            "point": p.iter().map(enc).collect::<Vec<_>>(),
            "printed_value": enc(&printed),
            "implemented_value": enc(&kummer_quartic_eval(&p)),
        }),
    )
}

fn hat_inverse_entry() -> Value {
    let h = hat_embed(&UPoint::new(q(1, 1), q(1, 1)));
    let implemented = hat_inverse(&h);
    let mut hat_symbols = implemented.clone();
    hat_symbols[2] = &hat_symbols[2] - q(4, 9) * h[0].powi(3);
    entry(
        "hat-inverse-sign",
        "X6 = X6hat − (1/3)X2hat X4hat − (2/9)X2³, mixing the unhatted X2 into a hat-coordinate formula",
        "X6 = X6hat − (1/3)X2hat X4hat + (2/9)X2hat³, the same formula after X2 = −X2hat",
        json!({
            "hat_point": h.iter().map(enc).collect::<Vec<_>>(),
            "implemented_inverse": implemented.iter().map(enc).collect::<Vec<_>>(),
            "round_trip": hat_forward(&implemented).iter().map(enc).collect::<Vec<_>>(),
            "reading_x2_as_hat": hat_symbols.iter().map(enc).collect::<Vec<_>>(),
            "reading_x2_as_hat_round_trip": hat_forward(&hat_symbols).iter().map(enc).collect::<Vec<_>>(),
        }),
    )
}

fn rk1_entry() -> Value {
    let (u, v) = (UPoint::new(q(1, 1), q(0, 1)), UPoint::new(q(2, 1), q(0, 1)));
    let (x, y) = (hat_embed(&u)[0].clone(), hat_embed(&v)[0].clone());
    let targets = [hat_embed(&u.add(&v))[0].clone(), hat_embed(&u.sub(&v))[0].clone()];
    let at = |sign: i64, z: &Q| z * z + q(2 * sign, 1) * (&x + &y) * z + (&x - &y) * (&x - &y);
    entry(
        "rational-kummer-first-quadratic",
        "Z² + 2(x + y)Z + (x − y)² = 0 for the first hat coordinate",
        "Z² − 2(x + y)Z + (x − y)² = 0, whose roots are −(a ± c)² when x = −a², y = −c²",
        json!({
            "x": enc(&x), "y": enc(&y),
            "sum_and_difference_coordinates": targets.iter().map(enc).collect::<Vec<_>>(),
            "printed_at_targets": targets.iter().map(|z| enc(&at(1, z))).collect::<Vec<_>>(),
            "implemented_at_targets": targets.iter().map(|z| enc(&at(-1, z))).collect::<Vec<_>>(),
        }),
    )
}

/// Printed sum and product of the third hat coordinates of `u ± v`.
fn printed_b3_c3(x: &[Q; 3], y: &[Q; 3]) -> (Q, Q) {
    let [x2, x4, x6] = x.clone();
    let [y2, y4, y6] = y.clone();
    let (t, n) = (|a: i64, b: i64| q(a, b), |a: i64| q(a, 1));
    let lead_x = &x6 - t(1, 3) * &x4 * &x2 - t(2, 9) * x2.powi(3);
    let lead_y = &y6 - t(1, 3) * &y4 * &y2 - t(2, 9) * y2.powi(3);
    let mid = -(&x2 * &x4) + t(1, 3) * x2.powi(3) - n(3) * &x4 * &y2 + x2.square() * &y2 - n(3) * &x2 * &y4
        + &x2 * y2.square()
        + n(2) * y2.square();
    let tail = -x2.powi(3) + n(15) * x2.square() * &y2 + n(15) * &x2 * y2.square() - y2.powi(3);
    let b3 = n(2) * (lead_x.clone() + lead_y.clone() - t(1, 3) * mid + t(1, 9) * tail);
    let inner = -t(1, 9)
        * (t(1, 3) * x2.square() - &x2 * &x4 + x2.square() * &y2 - n(3) * &x4 * &y2 + n(3) * &y4 * &x2
            - y2.square() * &x2
            + &y2 * &y4
            - t(1, 3) * y2.powi(3));
    let c3 = (lead_x - lead_y + t(1, 9) * (&y2 - &x2).powi(3) + inner).square();
    (b3, c3)
}

fn b3_c3_entry() -> Value {
    let (u, v) = (UPoint::new(q(1, 1), q(0, 1)), UPoint::new(q(0, 1), q(1, 1)));
    let (x, y) = (hat_embed(&u), hat_embed(&v));
    let (p, m) = (sigma0(&u.add(&v)).square(), sigma0(&u.sub(&v)).square());
    let (pb, pc) = printed_b3_c3(&x, &y);
    entry(
        "rational-kummer-third-quadratic",
        "closed hat-coordinate expressions for the sum B3 and product C3 of the third coordinates of u ± v",
        "B3 and C3 computed from the lifted preimages u, v as σ0(u+v)² + σ0(u−v)² and σ0(u+v)²σ0(u−v)²",
        json!({
            "u": [enc(&u.u1), enc(&u.u3)], "v": [enc(&v.u1), enc(&v.u3)],
            "printed": {"B3": enc(&pb), "C3": enc(&pc)},
            "implemented": {"B3": enc(&(&p + &m)), "C3": enc(&(&p * &m))},
        }),
    )
}

/// A rational point pair on `μ² = s⁵`.
fn rational_support() -> [Q; 4] {
    [q(1, 1), q(1, 1), q(4, 1), q(32, 1)]
}

fn differential_entry() -> Value {
    let [s1, m1, s2, m2] = rational_support();
    let d = &s1 - &s2;
    let wp111 = q(2, 1) * (&m1 - &m2) / &d;
    // inverting ds1/μ1 + ds2/μ2 = du3, s1 ds1/μ1 + s2 ds2/μ2 = du1 at du = (1, 0)
    let printed_rate = &m1 / &d - &m2 / &d;
    entry(
        "differential-normalization",
        "du1 = s ds/μ, du3 = ds/μ",
        "du1 = s ds/(2μ), du3 = ds/(2μ), the only normalization under which ∂℘11/∂u1 equals the stated ℘111 and 2μ = ℘111 s + ℘113 holds",
        json!({
            "support": [[enc(&s1), enc(&m1)], [enc(&s2), enc(&m2)]],
            "wp111": enc(&wp111),
            "d_wp11_du1_printed_normalization": enc(&printed_rate),
            "d_wp11_du1_implemented_normalization": enc(&(q(2, 1) * printed_rate.clone())),
        }),
    )
}

fn polysymmetric_entries() -> [Value; 2] {
    let [s1, m1, s2, m2] = rational_support();
    let e = crate::genus2::polysymmetric(&s1, &m1, &s2, &m2);
    let [e10, e01, e20, e02, e11] = e.clone();
    let lhs = (e10.square() - q(4, 1) * &e20) * (e01.square() - q(4, 1) * &e02);
    let rhs = &e10 * &e01 - q(2, 1) * &e11;
    let ratio = &rhs / (e10.square() - q(4, 1) * e20);
    let wp111 = q(2, 1) * (&m1 - &m2) / (&s1 - &s2);
    let support = json!([[enc(&s1), enc(&m1)], [enc(&s2), enc(&m2)]]);
    [
        entry(
            "polysymmetric-relation",
            "(e10² − 4e20)(e01² − 4e02) = e10 e01 − 2e11",
            "(e10² − 4e20)(e01² − 4e02) = (e10 e01 − 2e11)²; both sides are (s1 − s2)²(μ1 − μ2)²",
            json!({
                "support": support.clone(),
                "left": enc(&lhs),
                "printed_right": enc(&rhs),
                "implemented_right": enc(&rhs.square()),
            }),
        ),
        entry(
            "wp111-symmetric-form",
            "℘111 = (e10 e01 − 2e11)/(e10² − 4e20)",
            "℘111 = 2(μ1 − μ2)/(s1 − s2) = 2(e10 e01 − 2e11)/(e10² − 4e20)",
            json!({ "support": support, "printed": enc(&ratio), "implemented": enc(&wp111) }),
        ),
    ]
}

/// `℘33` numerator without the `s1²s2²(s1+s2)` term.
fn printed_pair_form<T: FromComplex>(a: &T, b: &T, curve: &CurveG2) -> T {
    pair_form(a, b, curve) - (a.clone() * b.clone()).square() * (a.clone() + b.clone())
}

fn wp33_entry() -> Result<Value> {
    let curve = CurveG2::from_reals([0.3, -1.1, 0.7, 0.4])?;
    let (s1, s2) = (C64::new(0.5, 0.2), C64::new(-0.8, 0.6));
    let d = MumfordDivisor::from_points(s1, curve.f(s1).sqrt(), s2, curve.f(s2).sqrt())?;
    let jet = wp_jet(&SupportPoints::of(&d)?, &curve);
    let implemented = (wp_jet_derivative(&d, Direction::U1, &curve)?.wp33 - jet.wp133).norm();
    let printed = crate::genus2::du_derivative(
        |p: &SupportPoints<Dual>| {
            (printed_pair_form(&p.s1, &p.s2, &curve) - Dual::from_int(2) * p.mu1 * p.mu2) / (p.s1 - p.s2).square()
        },
        &d,
        Direction::U1,
        &curve,
    )?;
    let printed = (printed - jet.wp133).norm();
    let [s1q, m1q, s2q, m2q] = rational_support();
    let wp33 = |extra: bool| {
        let f = if extra { (&s1q * &s2q).square() * (&s1q + &s2q) } else { Q::zero() };
        (f - q(2, 1) * &m1q * &m2q) / (&s1q - &s2q).square()
    };
    Ok(entry(
        "wp33-numerator",
        "F(s1, s2) = 2λ10 + λ8(s1+s2) + s1s2(2λ6 + λ4(s1+s2))",
        "F(s1, s2) = 2λ10 + λ8(s1+s2) + s1s2(2λ6 + λ4(s1+s2)) + s1²s2²(s1+s2)",
        json!({
            "curve": curve.to_json(),
            "support_s": [s1.encode(), s2.encode()],
            "d_wp33_du1_minus_wp133_printed": printed,
            "d_wp33_du1_minus_wp133_implemented": implemented,
            "rational_limit_support": [[enc(&s1q), enc(&m1q)], [enc(&s2q), enc(&m2q)]],
            "rational_limit_wp33_printed": enc(&wp33(false)),
            "rational_limit_wp33_implemented": enc(&wp33(true)),
        }),
    ))
}

fn case3_entry() -> Value {
    let u = UPoint::new(q(1, 1), q(-2, 3));
    entry(
        "kowalevski-third-case-sigma",
        "σ = u1³ on the line u3 = −(2/3)u1³",
        "σ0 = u3 − u1³/3 = −u1³; only σ0² enters the solution, so outputs agree",
        json!({ "u": [enc(&u.u1), enc(&u.u3)], "sigma0": enc(&sigma0(&u)) }),
    )
}

/// Every recorded discrepancy with freshly computed reproduction values.
pub fn typo_ledger() -> Result<Value> {
    let [poly, wp111] = polysymmetric_entries();
    Ok(json!({
        "entries": [
            groupoid2_entry()?,
            constraint_entry(),
            quartic_entry(),
            hat_inverse_entry(),
            rk1_entry(),
            b3_c3_entry(),
            differential_entry(),
            poly,
            wp111,
            wp33_entry()?,
            case3_entry(),
        ]
    }))
}
