use std::fmt;
use std::io;

use rotospin::Error;

/// Failures mapped onto the process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad or inconsistent input, exit 2.
    Config(String),
    /// Exact lossless resonance, exit 3.
    Singular(String),
    /// A self-check or validation check failed, exit 4.
    Validation(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Singular(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Singular(m) => write!(f, "singular resonance: {m}"),
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularResonance { .. } => CliError::Singular(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}
