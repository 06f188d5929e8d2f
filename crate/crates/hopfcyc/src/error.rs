//! Error type of the front end, with the exit-code contract.

use std::path::PathBuf;

/// Failures surfaced by model loading, commands and golden comparison.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The model file could not be read.
    #[error("cannot read {path}: {source}")]
    Io {
        /// File that failed.
        path: PathBuf,
        /// Underlying IO error.
        source: std::io::Error,
    },
    /// The document is not valid TOML or does not match the schema.
    #[error("model file: {0}")]
    Syntax(String),
    /// The document parses but refers to undeclared names or has
    /// inconsistent shapes.
    #[error("model file: {0}")]
    Schema(String),
    /// A `--class` selector could not be resolved.
    #[error("class selector: {0}")]
    Selector(String),
    /// A golden file is malformed.
    #[error("golden file: {0}")]
    Golden(String),
    /// The engine rejected the request.
    #[error(transparent)]
    Engine(#[from] hopfcyc_core::Error),
}

impl CliError {
    /// Process exit code: 2 for unreadable or unparseable input, 1 for
    /// everything else (validation failures, non-cocycles, engine errors).
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Syntax(_) | CliError::Schema(_) | CliError::Golden(_) => 2,
            CliError::Engine(hopfcyc_core::Error::Parse { .. }) => 2,
            CliError::Selector(_) | CliError::Engine(_) => 1,
        }
    }
}

/// Result alias of the front end.
pub type Result<T> = std::result::Result<T, CliError>;
