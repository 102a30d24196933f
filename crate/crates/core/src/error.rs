use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the domain of an operation (mismatched sizes, invalid
    /// alternatives, out-of-range indices).
    #[error("domain error: {0}")]
    Domain(String),

    /// An exhaustive computation would touch more items than the configured cap.
    #[error("enumeration of {needed} items exceeds the cap of {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    /// A precondition of a constructive procedure did not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A constructive procedure ran out of cases that the underlying argument
    /// guarantees must exist. This always indicates a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
