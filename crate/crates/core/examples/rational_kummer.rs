//! The rational limit: the quadric law, hat coordinates on the Kummer
//! quartic, and the two-valued product there.

use twovalued::error::Result;
use twovalued::multiset::Encode;
use twovalued::rational_kummer::{eg_mul, hat_embed, hat_lift, kummer_quartic_eval, printed_quartic_eval, quadric_embed, rk_mul, UPoint};
use twovalued::scalar::{format_rational, parse_rational, Tolerance};

fn main() -> Result<()> {
    let q = |s: &str| parse_rational(s).expect("literal");
    let exact = Tolerance::exact();
    let (u, v) = (UPoint::new(q("1"), q("1")), UPoint::new(q("-3/2"), q("5/3")));

    println!("quadric product: {}", eg_mul(&quadric_embed(&u), &quadric_embed(&v), &exact)?.encode_json());

    let (x, y) = (hat_embed(&u), hat_embed(&v));
    println!("hat(u) = {}", x.encode_json());
    println!("quartic at hat(u) = {}", format_rational(&kummer_quartic_eval(&x)));
    println!("alternative quartic at hat(u) = {}", format_rational(&printed_quartic_eval(&x)));
    println!("lift of hat(u): {}", hat_lift(&x, &exact)?.encode_json());
    println!("hat(u) * hat(v) = {}", rk_mul(&x, &y, &exact)?.encode_json());
    println!("hat(u + v)     = {}", hat_embed(&u.add(&v)).encode_json());
    println!("hat(u - v)     = {}", hat_embed(&u.sub(&v)).encode_json());
    Ok(())
}
