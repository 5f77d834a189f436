use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different fields or rings.
    #[error("structural error: {0}")]
    Structural(String),
    /// A field operation has no result (inversion of zero).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// Input violates a documented precondition.
    #[error("validation error: {0}")]
    Validation(String),
    /// Malformed polynomial or field-element text.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
