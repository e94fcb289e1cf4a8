use thiserror::Error;

/// Errors raised by the tree, type and diagonalization operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input is well formed but of a kind the operation does not handle.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Text could not be parsed into a node, type id or permutation.
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument lies outside the domain of a numeric function.
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn unsupported<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Unsupported(msg.into()))
}
