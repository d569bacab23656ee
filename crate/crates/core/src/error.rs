use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("unsupported ambient dimension {0} (expected 1 or 2)")]
    UnsupportedDimension(usize),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("point is not a sample point of the set")]
    NotASamplePoint,

    #[error("metric mismatch between operands")]
    MetricMismatch,

    #[error("set too large: {size} points exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("construction underflows at level {level}: {reason}")]
    Underflow { level: u32, reason: String },

    #[error("too few admissible scales: {found} found, {required} required ({reason})")]
    TooFewScales {
        found: usize,
        required: usize,
        reason: String,
        /// Smallest theta that would have enough rungs, when the failure is theta-dependent.
        theta_min: Option<f64>,
    },

    #[error("every theta was skipped")]
    AllSkipped { reasons: Vec<(f64, String)> },

    #[error("outside validity window: {0}")]
    OutsideWindow(String),

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
