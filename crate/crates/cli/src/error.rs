use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("limit reached: {0}")]
    Exhausted(String),
    #[error("check failed: {0}")]
    Failed(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Param(_) => ExitCode::from(2),
            CliError::Exhausted(_) => ExitCode::from(3),
            CliError::Failed(_) | CliError::Io(_) | CliError::Internal(_) => ExitCode::from(1),
        }
    }
}
