use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed share-string: {0}")]
    Parse(String),

    #[error("invalid letter permutation: {0}")]
    InvalidPermutation(String),

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("substitution is not recognizable (periodic)")]
    NotRecognizable,

    #[error("matrix has a negative entry")]
    NegativeEntry,

    #[error("substitution is not left-proper")]
    NotLeftProper,

    #[error("pair ({0}) is not balanced")]
    Unbalanced(String),

    #[error("polynomial degree {degree} exceeds the exact-factorization cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("{what} exceeded its budget of {limit}")]
    Budget { what: &'static str, limit: u64 },

    #[error("i/o failure: {0}")]
    Io(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An internal consistency check failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn budget(what: &'static str, limit: u64) -> Self {
        Error::Budget { what, limit }
    }

    /// Whether retrying with a larger budget could succeed.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
