use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input violates a general-position assumption (ties, cocircular sites, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unknown voting rule `{0}`")]
    UnknownRule(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}
