use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inconsistent or out-of-range arguments.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold for the input.
    #[error("domain error: {0}")]
    Domain(String),
    /// A module or algebra violates its structural invariants.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// A search or memory budget would be exceeded.
    #[error("resource limit: {message}")]
    Resource { message: String, max_feasible: Option<usize> },
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub fn resource(msg: impl Into<String>, max_feasible: Option<usize>) -> Self {
        Error::Resource { message: msg.into(), max_feasible }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
