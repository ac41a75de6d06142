use thiserror::Error;

/// Errors raised by the analysis kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {0}: the m-bonacci family needs m >= 2")]
    InvalidDegree(usize),

    #[error("invalid probability pair: {0}")]
    InvalidProbability(String),

    #[error("letter d{index} is not in the alphabet for m = {m}")]
    InvalidLetter { index: usize, m: usize },

    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        needed: String,
        cap: usize,
    },

    #[error("level of rank {n} has {points} points, need at least {needed}")]
    LevelTooSmall {
        n: u32,
        points: usize,
        needed: usize,
    },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("no offspring edge {from} -> {to}")]
    NoEdge { from: String, to: String },

    #[error(
        "sign undecided after refining the root enclosure to 2^-{bits}; \
         the coefficient basis may be dependent"
    )]
    Undecided { bits: u32 },

    #[error("the witness path needs m >= 3, got m = {0}; use the golden-ratio analysis for m = 2")]
    WitnessDegree(usize),

    #[error("merge audit failed at rank {n}, point {index}: {detail}")]
    AuditMismatch {
        n: u32,
        index: usize,
        detail: String,
    },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
