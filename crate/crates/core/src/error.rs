use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A truncated computation could not certify its answer at this precision.
    #[error("precision {precision} insufficient: {what}")]
    Precision { precision: usize, what: String },
    /// Escalation reached the cap without two consecutive agreeing runs.
    #[error("precision exhausted at cap {cap}: {what}")]
    PrecisionExhausted { cap: usize, what: String },
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn presentation(msg: impl Into<String>) -> Self {
        Error::Presentation(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn precision(precision: usize, what: impl Into<String>) -> Self {
        Error::Precision { precision, what: what.into() }
    }
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Precision { .. } | Error::PrecisionExhausted { .. })
    }
}
