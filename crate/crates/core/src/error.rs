use thiserror::Error;

/// Errors produced while setting up or running a solve.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("tridiagonal elimination broke down at row {row} (pivot {pivot:e})")]
    SingularPivot { row: usize, pivot: f64 },

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
