use thiserror::Error;

/// Errors produced by the combinatorial engines and the matrix model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Moment data is too short for the requested order.
    #[error("insufficient moment data: order {needed} requested, {available} available")]
    InsufficientData { needed: usize, available: usize },

    /// A request exceeds a configured resource bound.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A caller broke an internal contract (e.g. passed an unfiltered partition).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Text or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
