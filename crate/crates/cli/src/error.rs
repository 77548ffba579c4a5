use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Horizon(String),
    #[error("{0}")]
    Numeric(String),
    /// A run completed but its result is outside the configured tolerance.
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Horizon(_) => 2,
            CliError::Numeric(_) | CliError::CheckFailed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<burgers_core::Error> for CliError {
    fn from(e: burgers_core::Error) -> Self {
        use burgers_core::Error as E;
        match e {
            E::InvalidParameter { .. } => CliError::Validation(e.to_string()),
            E::Horizon { .. } => CliError::Horizon(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
