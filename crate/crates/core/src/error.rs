//! Crate-wide error type.
//!
//! Errors fall into two camps: *domain* errors (bad arguments, violated
//! preconditions, unparseable input) and *internal* errors (invariants the
//! library itself guarantees were found broken).  Verification outcomes are
//! not errors — drivers report them as `ok` flags in their result structs so
//! a failed check still yields a full report.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Dimension above what the exact solvers support.
    #[error("dimension {dim} unsupported (maximum {max})")]
    UnsupportedDimension { dim: usize, max: usize },

    /// Point-set file could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Golden-section bracket scan saw more than one rise/fall transition.
    #[error("objective not unimodal on [{lo}, {hi}] (r = {r}, a = {a})")]
    NonUnimodal { r: f64, a: f64, lo: f64, hi: f64 },

    /// A guarantee the library itself is responsible for failed to hold.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Shorthand for a formatted domain error.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
