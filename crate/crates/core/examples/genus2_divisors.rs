//! Divisor arithmetic on a genus-2 curve: Cantor addition, the ℘-functions
//! of a divisor, and Jacobi inversion back to the divisor.

use twovalued::error::Result;
use twovalued::genus2::{cantor_add, cantor_sub, jacobi_invert, wp_from_divisor, CurveG2, MumfordDivisor};
use twovalued::multiset::{Approx, Encode};
use twovalued::sampling::sample_rng;
use twovalued::scalar::Tolerance;

fn main() -> Result<()> {
    let curve = CurveG2::from_reals([0.3, -1.1, 0.7, 0.4])?;
    let mut rng = sample_rng(2024, 0);
    let a = MumfordDivisor::random(&mut rng, &curve, 2.0)?;
    let b = MumfordDivisor::random(&mut rng, &curve, 2.0)?;
    println!("a = {}", a.encode_json());
    println!("b = {}", b.encode_json());

    let sum = cantor_add(&a, &b, &curve)?;
    println!("a + b = {}", sum.encode_json());
    let back = cantor_sub(&sum, &b, &curve)?;
    println!("(a + b) - b equals a: {}", back.approx_eq(&a, &Tolerance::uniform(1e-8)));

    let jet = wp_from_divisor(&a, &curve)?;
    println!("wp jet of a: {}", jet.encode_json());
    let inverted = jacobi_invert(jet.wp11, jet.wp13, jet.wp111, jet.wp113, &curve, &Tolerance::uniform(1e-8))?;
    println!("Jacobi inversion recovers a: {}", inverted.approx_eq(&a, &Tolerance::uniform(1e-8)));
    Ok(())
}
