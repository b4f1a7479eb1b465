use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input exceeds a fixed capacity (ground set above 64, exhaustive cap, ...).
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// An input violates a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A mathematical guarantee the code relies on did not hold.
    #[error("internal contract violated: {0}")]
    InternalContract(String),
    /// An operation was called in the wrong state (e.g. a failed verification).
    #[error("invalid state: {0}")]
    State(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
