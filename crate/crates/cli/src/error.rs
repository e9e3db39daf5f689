use std::io;
use std::path::Path;

use thiserror::Error;

/// Failure of a CLI command, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unknown ids, invalid settings, malformed config.
    #[error("{0}")]
    Validation(String),
    /// Something failed while running or reading/writing files.
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    pub(crate) fn io(path: &Path, err: io::Error) -> Self {
        CliError::Runtime(format!("{}: {err}", path.display()))
    }

    pub(crate) fn csv(path: &Path, err: csv::Error) -> Self {
        CliError::Runtime(format!("{}: {err}", path.display()))
    }
}

impl From<bbsca_core::Error> for CliError {
    fn from(err: bbsca_core::Error) -> Self {
        use bbsca_core::Error as E;
        match err {
            E::UnknownId(_) | E::Config(_) | E::InvalidArgument(_) | E::DimensionMismatch { .. } => {
                CliError::Validation(err.to_string())
            }
            _ => CliError::Runtime(err.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
