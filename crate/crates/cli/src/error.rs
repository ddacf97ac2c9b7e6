use std::fmt;

use su2opt_core::Error as CoreError;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    VerificationFailed = 1,
    Usage = 2,
    NoConvergence = 3,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(CoreError),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Usage(_) | CliError::Io(_) => Exit::Usage,
            CliError::Numerical(_) => Exit::NoConvergence,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoConvergence(_)
            | CoreError::NoBracket { .. }
            | CoreError::AmbiguousBranch { .. }
            | CoreError::SingularAdjoint { .. }
            | CoreError::NotFound { .. }
            | CoreError::Indeterminate { .. } => CliError::Numerical(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}
