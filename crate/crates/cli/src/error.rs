use std::path::PathBuf;

use thiserror::Error;
use volsel_core::VolselError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] VolselError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    /// Process exit status: 2 usage, 3 solver budget or cap, 4 parse, 1 failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_budget() => 3,
            CliError::Core(VolselError::Parse { .. })
            | CliError::Core(VolselError::InvalidCoordinate { .. })
            | CliError::Core(VolselError::ExactOverflow) => 4,
            CliError::Verification => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
