use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid mixing matrix: {0}")]
    InvalidMixing(String),

    #[error(
        "reference oracle did not converge after {iterations} iterations (last step {last_step:e})"
    )]
    OracleFailure { iterations: usize, last_step: f64 },

    #[error("image dimensions {height}x{width} are not powers of two")]
    NotPowerOfTwo { height: usize, width: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
