//! The two-valued product on the Kummer surface of a genus-2 curve, and the
//! explicit φ ∓ ψ formulas compared with Cantor arithmetic.

use twovalued::error::Result;
use twovalued::genus2::{cantor_add, kummer_embed, kummer_lift, kummer_mul, phi_psi, wp_from_divisor, CurveG2, Direction, MumfordDivisor};
use twovalued::multiset::Encode;
use twovalued::sampling::sample_rng;
use twovalued::scalar::Tolerance;

fn main() -> Result<()> {
    let curve = CurveG2::from_reals([0.3, -1.1, 0.7, 0.4])?;
    let mut rng = sample_rng(7, 0);
    let a = MumfordDivisor::random(&mut rng, &curve, 2.0)?;
    let b = MumfordDivisor::random(&mut rng, &curve, 2.0)?;
    let (x, y) = (kummer_embed(&a, &curve)?, kummer_embed(&b, &curve)?);
    println!("x = {}", x.encode_json());
    println!("lift of x = {}", kummer_lift(&x, &curve, &Tolerance::uniform(1e-8))?.encode_json());

    let product = kummer_mul(&x, &y, &curve, &Tolerance::uniform(1e-6))?;
    println!("x * y = {}", product.encode_json());

    let (phi, psi) = phi_psi(&a, &b, Direction::U1, Direction::U3, &curve)?;
    let direct = wp_from_divisor(&cantor_add(&a, &b, &curve)?, &curve)?.wp13;
    println!("wp13(u+v): phi - psi = {:.12}, Cantor = {:.12}", phi - psi, direct);
    Ok(())
}
