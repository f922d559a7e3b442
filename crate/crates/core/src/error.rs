use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition {partition} is not {expected}")]
    WrongClass {
        partition: String,
        expected: &'static str,
    },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("no covers: {0}")]
    NoCovers(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("out of supported range: {0}")]
    Scope(String),
    #[error("truncation order too small: {0}")]
    Truncation(String),
    #[error("missing prerequisite: {0}")]
    Missing(String),
    #[error("not enough sample points: {0}")]
    InsufficientSamples(String),
}

pub type Result<T> = std::result::Result<T, Error>;
