use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Tables of the wrong shape or with out-of-range entries.
    #[error("malformed table: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not an idempotent semiring: {0}")]
    NotIdempotentSemiring(String),
    /// A documented precondition of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource limit: {0}")]
    Resource(String),
    /// A computed object contradicts a proved structural fact. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
