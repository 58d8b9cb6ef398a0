use thiserror::Error;

use crate::report::Violation;

/// Errors raised by constructions and checks.
///
/// `Violated` is the only variant that describes a mathematical failure
/// (with a witness); every other variant is a structural or input problem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("profile mismatch: `{left}` vs `{right}`")]
    ProfileMismatch { left: String, right: String },

    #[error("size guard exceeded: {what} has {size} elements (limit {limit})")]
    SizeGuard { what: String, size: usize, limit: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("not closed: {0}")]
    NotClosed(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Violated(Violation),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// True when the error carries a mathematical witness rather than
    /// describing malformed input.
    pub fn is_violation(&self) -> bool {
        matches!(self, Error::Violated(_))
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Violated(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
