use thiserror::Error;

/// One hypothesis equality that failed to hold on a distribution.
#[derive(Debug, Clone)]
pub struct ConstraintFailure {
    pub expression: String,
    pub value: f64,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown ray name: {0}")]
    UnknownRay(String),

    #[error("unsupported face: {0}")]
    UnsupportedFace(String),

    #[error("point is not in the required face: {0}")]
    FaceMismatch(String),

    #[error("hypothesis constraints violated: {}", format_failures(.0))]
    ConstraintReport(Vec<ConstraintFailure>),

    #[error("no real root: discriminant {0} is negative")]
    NoRealRoot(String),

    #[error("enumeration refused: estimated {estimate:.3e} candidates exceeds limit {limit:.1e}")]
    GuardExceeded { estimate: f64, limit: f64 },

    #[error("unknown bound name: {0}")]
    UnknownBound(String),

    #[error("bound `{bound}` requires a distribution input, not a bare vector")]
    NeedsDistribution { bound: String },
}

fn format_failures(failures: &[ConstraintFailure]) -> String {
    failures
        .iter()
        .map(|f| format!("{} = {:.3e}", f.expression, f.value))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
