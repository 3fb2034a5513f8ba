use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A cell position or shape that does not fit the tableau.
    #[error("shape error: {0}")]
    Shape(String),
    /// An argument outside the domain of an operation (letter out of range, bad index).
    #[error("domain error: {0}")]
    Domain(String),
    /// A tableau or tensor element violating one of its invariants.
    #[error("invalid: {0}")]
    Invalid(String),
    /// A runtime certificate failed. Signals a bug, never a user error.
    #[error("verification failed: {0}")]
    Verification(String),
    /// A computation refused because it would exceed a configured limit.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A quasisymmetric function that does not expand positively into Schur functions.
    #[error("not symmetric: {0}")]
    NotSymmetric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
