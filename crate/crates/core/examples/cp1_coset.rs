//! The coset law on CP¹ attached to an elliptic curve, checked against the
//! chord formula on the curve itself.

use twovalued::elliptic::{affine_point, coset_mul, Cp1Law, CurveG1, PointG1};
use twovalued::error::Result;
use twovalued::law::{check_associativity, NValuedLaw};
use twovalued::multiset::Encode;
use twovalued::scalar::{Tolerance, C64};

fn main() -> Result<()> {
    let curve = CurveG1::new(C64::new(1.3, 0.4), C64::new(-0.7, 0.9));
    let law = Cp1Law::new(curve.clone());
    let tol = Tolerance::uniform(1e-9);

    let (s1, s2) = (C64::new(0.4, -0.2), C64::new(-1.1, 0.6));
    let product = law.product(&affine_point(s1), &affine_point(s2))?;
    println!("[s1] * [s2] in CP1:  {}", product.encode_json());

    let p = PointG1::on_curve(s1, curve.rhs(&s1).sqrt(), &curve, &tol)?;
    let r = PointG1::on_curve(s2, curve.rhs(&s2).sqrt(), &curve, &tol)?;
    println!("chord formula s(P±Q): {}", coset_mul(&p, &r, &tol)?.encode_json());

    let z = affine_point(C64::new(0.9, 0.3));
    let report = check_associativity(&law, &affine_point(s1), &affine_point(s2), &z, &Tolerance::uniform(1e-8))?;
    println!("associativity: passed = {}, distance = {:e}", report.passed(), report.max_distance);
    Ok(())
}
