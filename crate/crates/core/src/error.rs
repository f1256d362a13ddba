use thiserror::Error;

/// Errors raised by the counting, enumeration and code-construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exhaustive computation would exceed a configured ceiling.
    #[error("resource limit: {what} needs {required} items, exceeding the {guard} guard of {limit}")]
    ResourceLimit {
        guard: &'static str,
        what: String,
        required: String,
        limit: u64,
    },

    /// Two routes that must agree did not, or an exact division left a remainder.
    #[error("internal consistency violated: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}

pub(crate) fn inconsistent<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InternalConsistency(msg.into()))
}
