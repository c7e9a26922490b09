use thiserror::Error;

/// Errors raised by the exact engines.
///
/// Most variants never fire on valid input; they exist so that a broken
/// invariant surfaces as a value instead of a wrong number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} is not a rational integer")]
    NotRationalInteger(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("root of {0} is not representable in Q(zeta_9)")]
    UnrepresentableRoot(String),

    #[error("invalid eigenvalue multiset: {0}")]
    InvalidEigenvalues(String),

    #[error("group structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("closed-form identity violated: {0}")]
    FormulaViolation(String),

    #[error("negative remainder at weight {0:?} during decomposition")]
    NegativeRemainder(Vec<i64>),

    #[error("negative harmonic coefficient at degree {0}")]
    NegativeCoefficient(usize),

    #[error("scale exceeded: {0}")]
    ScaleExceeded(String),
}

impl Error {
    /// True when the error comes from bad caller input rather than a broken
    /// internal identity.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidWeight(_)
                | Error::PreconditionViolated(_)
                | Error::DimensionMismatch { .. }
                | Error::ScaleExceeded(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
