//! Kowalevski trajectories: numerical flow on a curve, and the closed form
//! in the rational limit.

use twovalued::error::Result;
use twovalued::genus2::{kowalevski_solution, CurveG2, MumfordDivisor};
use twovalued::multiset::Encode;
use twovalued::rational_kummer::{kowalevski_rational, UPoint};
use twovalued::sampling::sample_rng;
use twovalued::scalar::{format_rational, parse_rational, Tolerance};

fn main() -> Result<()> {
    let curve = CurveG2::from_reals([0.3, -1.1, 0.7, 0.4])?;
    let start = MumfordDivisor::random(&mut sample_rng(5, 0), &curve, 2.0)?;
    let tr = kowalevski_solution(&start, 1.0, 1e-3, &curve)?;
    println!("after t = {} ({} steps): {}", tr.t, tr.steps, tr.divisor.encode_json());
    println!("quadrature residuals: u1 {:e}, u3 {:e}", tr.u1_residual, tr.u3_residual);

    // u3 = u1³/12 at u1 = 2: a double point with rational coordinates
    let q = |s: &str| parse_rational(s).expect("literal");
    for (s, mu) in kowalevski_rational(&UPoint::new(q("2"), q("2/3")), &Tolerance::exact())? {
        println!("rational limit: s = {}, mu = {}", format_rational(&s), format_rational(&mu));
    }
    Ok(())
}
