use thiserror::Error;

/// Failure classes shared by every algorithm in the crate.
///
/// The classes are deliberately coarse: callers (the CLI in particular) map
/// them onto exit codes, so a new variant is a contract change.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs does not hold.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    /// The input is valid but exceeds a configured search or size bound.
    #[error("capability limit: {0}")]
    Capability(String),
    /// A self-check failed. Seeing this means a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::DivisionByZero)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
