use thiserror::Error;

use crate::expr::SyntaxError;

pub type Result<T> = std::result::Result<T, Error>;

/// Every integer index or degree accepted from the outside must be below this.
pub const INDEX_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} is out of range (indices and degrees must be below 2^32)")]
    Range { value: u64 },

    #[error("δ-index {index} is below 2")]
    IndexBelowTwo { index: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "α-factor {position} (α_{index}) cannot act on a class of degree {degree}: need 0 ≤ index ≤ degree − 2"
    )]
    AlphaConstraint { position: usize, index: u64, degree: u64 },

    #[error("domain boundary at iteration {stage}: δ-index {index} on degree {degree} is below 2")]
    DomainBoundary { stage: usize, degree: u64, index: i64 },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("expansion infeasible: {0}")]
    Infeasible(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("unknown generator or variable `{0}`")]
    Unknown(String),

    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("malformed JSON: {0}")]
    Json(String),
}

/// Coarse classification, used by the command line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Range,
    Syntax,
    Precondition,
    Input,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Range { .. } => ErrorKind::Range,
            Error::Syntax(_) | Error::Json(_) => ErrorKind::Syntax,
            Error::IndexBelowTwo { .. }
            | Error::Precondition(_)
            | Error::AlphaConstraint { .. }
            | Error::DomainBoundary { .. }
            | Error::NotHomogeneous
            | Error::Infeasible(_) => ErrorKind::Precondition,
            Error::InvalidRing(_) | Error::Unknown(_) => ErrorKind::Input,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

/// Rejects values at or above [`INDEX_LIMIT`].
pub fn check_range(value: u64) -> Result<u64> {
    if value >= INDEX_LIMIT {
        Err(Error::Range { value })
    } else {
        Ok(value)
    }
}
