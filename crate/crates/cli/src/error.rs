use std::io;
use std::path::Path;

use foca_core::betareg::BetaRegError;
use foca_core::inspect::InspectError;
use foca_core::questionnaire::QuestionnaireError;
use foca_core::scoring::ScoringError;
use thiserror::Error;

/// A failed command. The variant fixes the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: usage, schema, applicability or I/O. Exit 2.
    #[error("{0}")]
    Validation(String),
    /// Malformed Turtle. Exit 3.
    #[error("{0}")]
    Parse(String),
    /// Numeric failure during fitting or simulation. Exit 4.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    pub(crate) fn io(path: &Path, e: io::Error) -> Self {
        CliError::Validation(format!("{}: {e}", path.display()))
    }

    pub(crate) fn in_file(path: &Path, e: impl Into<CliError>) -> Self {
        match e.into() {
            CliError::Validation(m) => CliError::Validation(format!("{}: {m}", path.display())),
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            CliError::Numeric(m) => CliError::Numeric(format!("{}: {m}", path.display())),
        }
    }
}

impl From<QuestionnaireError> for CliError {
    fn from(e: QuestionnaireError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ScoringError> for CliError {
    fn from(e: ScoringError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<InspectError> for CliError {
    fn from(e: InspectError) -> Self {
        match e {
            InspectError::NoOwnNamespace => CliError::Validation(e.to_string()),
            InspectError::Parse { .. } | InspectError::UnknownPrefix { .. } => CliError::Parse(e.to_string()),
        }
    }
}

impl From<BetaRegError> for CliError {
    fn from(e: BetaRegError) -> Self {
        match e {
            BetaRegError::Dataset(_) => CliError::Validation(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
