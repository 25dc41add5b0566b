use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("weights {0:?} are not coprime (gcd must be 1)")]
    Coprimality(Vec<u64>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("point {0} does not lie on the curve")]
    PointNotOnCurve(String),
    #[error("marked points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("branch is singular at the expansion point (partial derivative vanishes)")]
    SingularBranch,
    #[error("operation not supported by the {backend} backend: {what}")]
    UnsupportedBackend { backend: &'static str, what: String },
    #[error("input needs an algebraic extension of Q: {0}")]
    NeedsExtension(String),
    #[error("{0} has a pole at the evaluation point")]
    Pole(String),
    #[error("index {index} out of range (have {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("validation failed in degree {degree}: {reason}")]
    Validation { degree: usize, reason: String },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Coprimality(_) => "coprimality",
            Error::Precondition(_) => "precondition",
            Error::SingularCurve(_) => "singular-curve",
            Error::PointNotOnCurve(_) => "point-not-on-curve",
            Error::DuplicatePoint(..) => "duplicate-point",
            Error::SingularBranch => "singular-branch",
            Error::UnsupportedBackend { .. } => "unsupported-backend",
            Error::NeedsExtension(_) => "needs-extension",
            Error::Pole(_) => "pole",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::Validation { .. } => "validation",
            Error::Consistency(_) => "internal-consistency",
        }
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}
