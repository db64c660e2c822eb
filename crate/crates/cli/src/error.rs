use std::fmt;

use cyclofactor_core::Error;

/// Failure classes of the command line tool, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    /// Parameters outside the construction's hypotheses, or unusable input.
    Constraint(String),
    /// A verdict contradicted a claim, or an internal invariant broke.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Constraint(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn constraint(msg: impl Into<String>) -> Self {
        CliError::Constraint(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Constraint(m) => write!(f, "constraint violation: {m}"),
            CliError::Failure(m) => write!(f, "failure: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DivisionByZero
            | Error::FieldLevelMismatch { .. }
            | Error::ContextMismatch
            | Error::SpecInvariantViolated(_) => CliError::Failure(e.to_string()),
            _ => CliError::Constraint(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Constraint(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Constraint(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
