use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or argument is out of range or inconsistent.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A closed form is undefined at the requested parameters
    /// (e.g. anything involving 2/(1-p) at p = 1).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested combination has no defined answer (e.g. analytic
    /// expectations for linear windows).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A serialized table or manifest could not be decoded.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
