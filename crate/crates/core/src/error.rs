use thiserror::Error;

/// Errors raised by the exact geometry kernel and the layers built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ambient dimension {dim} exceeds the configured maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("ambient dimension must be positive")]
    ZeroDimension,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid scalar literal {literal:?}: {reason}")]
    InvalidScalar { literal: String, reason: &'static str },

    #[error("duplicate site id {0:?}")]
    DuplicateId(String),

    #[error("sites {0:?} and {1:?} have identical coordinates")]
    DuplicatePoint(String, String),

    #[error("unknown site id {0:?}")]
    UnknownId(String),

    #[error("invalid cell specification: {0}")]
    InvalidSpec(String),

    #[error("point lies outside the polytope")]
    OutsideHull,

    #[error("certificate does not satisfy the ball conditions: {0}")]
    InvalidCertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {candidates} candidate neighbours (limit {limit})")]
    BudgetExceeded { candidates: usize, limit: usize },

    #[error("invalid instance configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
