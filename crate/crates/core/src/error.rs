use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unknown candidate id {0}")]
    UnknownCandidate(u8),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration cap exceeded: {0}")]
    ResourceCap(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("placement not realizable: {0}")]
    Unrealizable(String),

    #[error("restricted graph is empty (no vertex has an element below {r})")]
    EmptyRestrictedGraph { r: u8 },

    #[error("delta value for edge {edge} is an interval, not exact")]
    IntervalDelta { edge: String },

    #[error(
        "oracle is not a committee scoring rule on this class: \
         cycle residual {residual} on edge {edge}"
    )]
    InconsistentOracle { edge: String, residual: String },

    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),
}
