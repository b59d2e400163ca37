use thiserror::Error;

use crate::frontend::ParseError;

/// Errors raised at operation boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("input is not in the required subalgebra: {0}")]
    NotInSubalgebra(&'static str),
    #[error("monomial division is not exact")]
    InexactDivision,
    #[error("negative input: {0}")]
    NegativeInput(String),
    #[error("point coordinate {index} must be positive")]
    NonPositivePoint { index: usize },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: i64, cap: i64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
