use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = PrepError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum PrepError {
    /// A configured size cap would be exceeded.
    #[error("{what} is {requested}, which exceeds the configured cap of {cap}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },

    #[error("parse error at line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("parse error at position {position}: {message}")]
    ParseAt { position: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl PrepError {
    /// Process exit code for this error: 3 for budget and cap errors, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            PrepError::SizeLimit { .. } => 3,
            _ => 2,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        PrepError::InvalidInput(msg.into())
    }
}
