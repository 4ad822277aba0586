use hyperdarboux_core::{DarbouxError, FamilyError, LadderError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or inadmissible parameters: exit 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    /// A computation that should succeed did not: exit 1.
    #[error("{0}")]
    Math(String),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Family(_) => 2,
            CliError::Math(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<DarbouxError> for CliError {
    fn from(e: DarbouxError) -> Self {
        CliError::Math(e.to_string())
    }
}

impl From<LadderError> for CliError {
    fn from(e: LadderError) -> Self {
        match e {
            LadderError::Family(f) => CliError::Family(f),
            LadderError::NoLowerNeighbor => CliError::Usage(e.to_string()),
            other => CliError::Math(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
