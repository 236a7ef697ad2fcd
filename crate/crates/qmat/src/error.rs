use std::fmt::Display;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Domain(#[from] qmat_core::Error),
    /// Some verification checks failed; the report has already been printed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn parse(e: impl Display) -> Self {
        CliError::Parse(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }
}
