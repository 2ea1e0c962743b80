use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient of the quadratic is zero")]
    DegenerateLeadingCoefficient,
    #[error("multiset arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("projective point has all coordinates zero or non-finite")]
    InvalidProjectivePoint,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("quadratic has no roots in the exact field (discriminant is not a square)")]
    IrrationalRoots,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("denominator vanishes at the evaluation point")]
    SingularDenominator,
    #[error("points have coincident s-coordinates; chord formula degenerates")]
    CoincidentPoints,
    #[error("no pairing of quadratic roots satisfies the selection constraint (best residual {residual:e})")]
    PairingSelectionFailed { residual: f64 },
    #[error("no preimage for the point: {0}")]
    LiftFailed(String),
    #[error("point lies on the theta divisor (sigma = 0)")]
    ThetaDivisor,
    #[error("numerically singular step: {0}")]
    NumericallySingular(String),
    #[error("divisor support has coincident s-coordinates")]
    CoincidentSupport,
    #[error("divisor has a point at infinity (degree < 2)")]
    PointAtInfinity,
    #[error("point is off the curve (residual {residual:e})")]
    OffCurve { residual: f64 },
    #[error("divisor support contains a branch point (mu = 0)")]
    BranchPoint,
    #[error("Kummer point is not on the Kummer surface (residual {residual:e})")]
    InconsistentKummerPoint { residual: f64 },
    #[error("pairing M(u, v) vanishes")]
    SingularPairing,
    #[error("trajectory became singular at t = {t}")]
    TrajectorySingular { t: f64 },
    #[error("fiber condition violated: anchors differ")]
    AnchorMismatch,
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("law evaluation failed at {inputs}: {source}")]
    LawEvaluation { inputs: String, source: Box<Error> },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Strips `LawEvaluation` wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::LawEvaluation { source, .. } => source.root(),
            e => e,
        }
    }

    /// Errors raised at denominator loci of a law. Batch suites resample these.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self.root(),
            Error::SingularDenominator
                | Error::CoincidentPoints
                | Error::ThetaDivisor
                | Error::NumericallySingular(_)
                | Error::CoincidentSupport
                | Error::PointAtInfinity
                | Error::BranchPoint
                | Error::SingularPairing
        )
    }
}
