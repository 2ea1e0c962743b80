//! p2, the integer law and the two groupoid deformations, in exact arithmetic.

use twovalued::elementary::{groupoid1_mul, groupoid2_mul, groupoid_via_group_law, orbit_coordinate, p2_mul, zplus_mul};
use twovalued::error::Result;
use twovalued::multiset::{Encode, MultiValue};
use twovalued::scalar::{parse_rational, Tolerance, Q};

fn show(label: &str, m: &MultiValue<Q>) {
    println!("{label:<28} {}", m.encode_json());
}

fn main() -> Result<()> {
    let q = |s: &str| parse_rational(s).expect("literal");

    show("p2(1, 4)", &p2_mul(&q("1"), &q("4"))?);
    show("p2(9/4, 1/4)", &p2_mul(&q("9/4"), &q("1/4"))?);
    println!("{:<28} {}", "zplus(3, 5)", zplus_mul(3, 5)?.encode_json());

    // orbit coordinates of rational points keep the products rational
    let (l1, l2) = (q("1/2"), q("-1/3"));
    let (u, v) = (q("2/3"), q("-5/4"));
    let (x, y) = (orbit_coordinate(&u, &l1)?, orbit_coordinate(&v, &l1)?);
    show("groupoid1 over λ = 1/2", &groupoid1_mul(&x, &y, &l1)?);
    show("groupoid2 over (1/2, -1/3)", &groupoid2_mul(&x, &y, &l1, &l2, &Tolerance::exact())?);
    show("same, via the group law", &groupoid_via_group_law(&u, &v, &l1, &l2)?);
    Ok(())
}
