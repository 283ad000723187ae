use thiserror::Error;

/// Errors raised by construction and validation routines.
///
/// `Validation` covers bad user input (a vector failing a congruence, a
/// permutation that is not a diagram automorphism, ...). `Internal` marks
/// a broken invariant that indicates a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(msg: impl Into<String>) -> Error {
        Error::Validation(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Error {
        Error::Internal(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }
}
