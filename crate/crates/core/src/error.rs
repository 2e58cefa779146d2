use thiserror::Error;

/// Errors raised by the library.
///
/// `Input` covers malformed or out-of-range arguments. `Invariant` means a
/// computed object failed a structural check that should hold by theory;
/// callers treat it as a verification failure rather than a usage error.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("singular matrix")]
    Singular,
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
