use thiserror::Error;

/// Failures surfaced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input (non-prime modulus, foreign parents, empty lists).
    #[error("input error: {0}")]
    Input(String),
    /// The operation is undefined at this argument (inverse of zero, ZERO^-1, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An exact computation would exceed its configured bound.
    #[error("resource error: {0}")]
    Resource(String),
    /// An irreducibility certificate or automorphism failed validation.
    #[error("certificate error: {0}")]
    Certificate(String),
    /// A hypothesis of a seminorm construction does not hold.
    #[error("precondition violated ({hypothesis}): {witness}")]
    Precondition { hypothesis: String, witness: String },
    /// Text could not be parsed; `position` is a byte offset into the input.
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    /// Short machine-readable tag used in CLI error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::Certificate(_) => "certificate",
            Error::Precondition { .. } => "precondition",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
