use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad input: wrong parameter range, mismatched rings, missing images.
    #[error("usage error: {0}")]
    Usage(String),

    /// Polynomial text that does not parse.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An internal identity failed (nonzero composition, non-homogeneous entry).
    #[error("integrity error: {0}")]
    Integrity(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}
