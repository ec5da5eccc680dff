use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("level mismatch: expected {expected}, got {got}")]
    LevelMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsolvable: {0}")]
    Unsolvable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
