//! Error type shared by the whole crate.
//!
//! Every failure is classified into one of four kinds so that callers (and
//! the command-line binary) can map it to a stable exit code: malformed
//! input (1), precondition rejection (2), budget exhaustion (3), precision
//! exhaustion (4).

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Input could not be parsed or violates a schema.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A documented precondition of an operation was not met.
    #[error("precondition rejected: {0}")]
    Precondition(String),

    /// A configured enumeration or cell budget was exceeded.
    #[error("budget exhausted: {0}")]
    Budget(String),

    /// The answer depends on coefficients beyond the trustworthy window of a
    /// truncated Laurent series.
    #[error("precision exhausted: {0}")]
    Precision(String),
}

impl Error {
    /// Process exit code associated with this error kind.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) => 1,
            Error::Precondition(_) => 2,
            Error::Budget(_) => 3,
            Error::Precision(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
