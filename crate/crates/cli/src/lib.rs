//! Command-line frontend for `galois-kit`: the expression parser, the
//! instance corpus runner, and the subcommands.

pub mod build;
pub mod commands;
pub mod corpus;
pub mod parse;

use std::fmt;

use galois_kit::Error;

/// Everything that can stop a command, with its process exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// Unreadable or malformed input files.
    Io(String),
    /// The corpus ran but some instances disagreed with their expectations.
    Mismatch(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Domain(_) | Error::DivisionByZero) | CliError::Io(_) => 2,
            CliError::Core(Error::Capability(_)) => 3,
            CliError::Core(Error::Internal(_)) | CliError::Mismatch(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Mismatch(names) => write!(f, "corpus mismatch in: {}", names.join(", ")),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
