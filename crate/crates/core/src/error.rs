use thiserror::Error;

/// Failure modes shared by every construction in the crate.
///
/// The variants are grouped so that front ends can map them onto distinct
/// exit statuses: `Parse` for malformed input, `Validation` for well-formed
/// but mathematically invalid input, `OutsideRange` when a gluing is asked
/// for below the degree at which it is known to be an embedding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("k = {k} is outside the proven range for this gluing (requires k >= {required})")]
    OutsideRange { k: u32, required: u32 },
    #[error("vertex cap exceeded: {vertices} vertices > cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("cancelled")]
    Cancelled,
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
