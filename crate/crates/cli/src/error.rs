use thiserror::Error;

/// Failures grouped by the process exit code they map to.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<f2bal::Error> for CliError {
    fn from(e: f2bal::Error) -> Self {
        match e {
            f2bal::Error::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            f2bal::Error::InvalidParams(_) => CliError::Usage(e.to_string()),
            f2bal::Error::Inconsistency(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
