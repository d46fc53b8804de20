use std::path::PathBuf;

use kawahara_core::Error as CoreError;
use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    ToleranceFail = 1,
    InvalidParameters = 2,
    NumericalFailure = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error("tolerance check failed for: {}", .0.join(", "))]
    Tolerance(Vec<String>),

    #[error("{message}{}", dump.as_ref().map(|p| format!(" (matrix written to {})", p.display())).unwrap_or_default())]
    Numerical { message: String, dump: Option<PathBuf> },

    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("serialization error: {0}")]
    Serialize(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::InvalidParameters,
            CliError::Tolerance(_) => ExitCode::ToleranceFail,
            CliError::Numerical { .. } | CliError::Io { .. } | CliError::Serialize(_) => ExitCode::NumericalFailure,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_)
            | CoreError::Resonant { .. }
            | CoreError::Inadmissible { .. }
            | CoreError::Degenerate { .. }
            | CoreError::WrongCollisionOrder { .. } => CliError::Invalid(e.to_string()),
            CoreError::NoCollision { .. }
            | CoreError::NearSingular { .. }
            | CoreError::ConventionMismatch { .. }
            | CoreError::EigenFailure { .. }
            | CoreError::SliceFailure { .. } => CliError::Numerical { message: e.to_string(), dump: None },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}
