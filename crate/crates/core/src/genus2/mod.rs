//! Genus-2 curves, their Jacobians and the two-valued group on the Kummer surface.

pub mod curve;
pub mod flow;
pub mod kummer;
pub mod poly;
pub mod wp;

pub use curve::{cantor_add, cantor_neg, cantor_sub, CurveG2, MumfordDivisor};
pub use poly::Poly;
pub use wp::{
    du_derivative, jacobi_invert, polysymmetric, polysymmetric_defect, wp_from_divisor, wp_jet, wp_jet_derivative,
    Direction, SupportPoints, WpJet,
};
pub use kummer::{
    gamma3, kummer_embed, kummer_lift, kummer_mul, m_pairing, phi_psi, semistable_mul, unit_point, z12, KummerClass,
    KummerLaw, KummerPoint, KummerProduct,
};
pub use flow::{kowalevski_solution, Trajectory};
