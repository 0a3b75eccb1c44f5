use thiserror::Error;

/// Errors surfaced by library operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("size cap exceeded for {what}: requested {requested}, cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("precision overflow: {0}")]
    PrecisionOverflow(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
