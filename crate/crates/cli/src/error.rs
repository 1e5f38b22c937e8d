use thiserror::Error;

/// Anything that makes a command unusable. All of these exit with status 2;
/// mathematical "no" answers are reported as failed claims instead.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    /// `pointer` is a JSON pointer into the offending document.
    #[error("{source_name} at {pointer}: {message}")]
    Schema {
        source_name: String,
        pointer: String,
        message: String,
    },
    #[error("{0}")]
    Library(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn library(err: impl std::fmt::Display) -> Self {
        CliError::Library(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
