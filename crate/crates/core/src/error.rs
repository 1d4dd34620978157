use thiserror::Error;

/// Errors raised by the engine.
///
/// `Domain` means the caller asked for something outside the mathematical
/// domain of an operation, `Resource` means a configured budget would be
/// exceeded, and `Verification` means an exact identity that must hold
/// failed on computed data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded for (p={p}, n={n}): {detail}")]
    Resource { p: u64, n: u32, detail: String },

    #[error("element is not a rational integer: {0}")]
    NotRational(String),

    #[error("verification failure in {check}: {detail}")]
    Verification { check: String, detail: String },

    #[error("table cache: {0}")]
    Cache(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn verification(check: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Verification {
            check: check.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
