use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative representation index k = {0}")]
    NegativeK(i64),
    #[error("k = {k} exceeds the configured cap {cap}")]
    KTooLarge { k: usize, cap: usize },
    #[error("tridiagonal eigensolver did not converge (block size {size})")]
    NoConvergence { size: usize },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation not available for {0}")]
    WrongFamily(String),
    #[error("parity violation: p - q = {0} must be even")]
    Parity(i64),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("cubic inversion failed: {0}")]
    CubicInversion(String),
    #[error("parse error at {pos}: {reason}")]
    Parse { pos: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
