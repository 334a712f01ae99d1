use thiserror::Error;

/// Failures mapped onto the process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or parameters (exit 2).
    #[error("{0}")]
    Config(String),
    /// Unreadable or invalid input data (exit 3).
    #[error("{0}")]
    Input(String),
    /// A numerical result contradicted an invariant (exit 4).
    #[error("{0}")]
    Anomaly(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Input(_) => 3,
            CliError::Anomaly(_) => 4,
        }
    }
}

pub(crate) fn config(e: posmap::Error) -> CliError {
    CliError::Config(e.to_string())
}

pub(crate) fn input(e: posmap::Error) -> CliError {
    CliError::Input(e.to_string())
}
