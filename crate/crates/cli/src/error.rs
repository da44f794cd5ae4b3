use std::path::Path;

/// Command failures, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub(crate) fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Runtime(format!("{}: {err}", path.display()))
    }
}

impl From<quantumness_core::Error> for CliError {
    fn from(err: quantumness_core::Error) -> Self {
        match err {
            quantumness_core::Error::ProbabilityOutOfRange { .. } => CliError::Runtime(err.to_string()),
            other => CliError::InvalidInput(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
