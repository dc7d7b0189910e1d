use casimir_phase::PhaseError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Quadrature(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<PhaseError> for CliError {
    fn from(e: PhaseError) -> Self {
        match e {
            PhaseError::Quadrature { .. } => Self::Quadrature(e.to_string()),
            _ => Self::Validation(e.to_string()),
        }
    }
}

/// What gets printed on stderr when a command fails.
#[derive(Debug, Serialize)]
pub struct ErrorReport<'a> {
    pub status: &'a str,
    pub exit_code: u8,
    pub message: String,
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Validation(_) => 2,
            Self::Quadrature(_) => 3,
            Self::Io { .. } => 1,
        }
    }

    pub fn report(&self) -> ErrorReport<'static> {
        let status = match self {
            Self::Validation(_) => "validation_error",
            Self::Quadrature(_) => "quadrature_failure",
            Self::Io { .. } => "io_error",
        };
        ErrorReport {
            status,
            exit_code: self.exit_code(),
            message: self.to_string(),
        }
    }
}
