use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    InvariantFailure = 1,
    InputError = 2,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{0}")]
    Input(String),
    #[error("invalid complex: {0}")]
    Complex(#[source] lphodge_core::Error),
    #[error("computation failed: {0}")]
    Compute(#[source] lphodge_core::Error),
    #[error("invariant violated: {}", .0.join(", "))]
    Invariants(Vec<String>),
    #[error("cannot write report: {0}")]
    Output(String),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Compute(_) | CliError::Invariants(_) => ExitStatus::InvariantFailure,
            _ => ExitStatus::InputError,
        }
    }
}

impl From<lphodge_core::Error> for CliError {
    fn from(e: lphodge_core::Error) -> Self {
        CliError::Compute(e)
    }
}
