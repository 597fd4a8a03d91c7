use thiserror::Error;

/// Failures surfaced by the command line. Input problems exit with 2,
/// everything else with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Check(String),

    #[error(transparent)]
    Core(#[from] algebroid_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Core(algebroid_core::Error::Parse { .. }) => 2,
            CliError::Check(_) | CliError::Core(_) => 1,
        }
    }
}
