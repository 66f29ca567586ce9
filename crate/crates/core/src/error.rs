use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Bad arguments: mismatched groups, non-divisors, violated preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// A linear system that must be solvable was not.
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    /// A numeric result did not reach the requested tolerance.
    #[error("precision not achieved: {0}")]
    Precision(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
