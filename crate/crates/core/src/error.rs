use thiserror::Error;

use crate::fence::SetKind;

pub type Result<T, E = FenceError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FenceError {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("fence has {n} elements; at most {max} are supported")]
    TooManyElements { n: usize, max: usize },

    #[error("expected {expected}, got {found}")]
    KindMismatch { expected: SetKind, found: SetKind },

    #[error("{0} is not {1}")]
    NotInFamily(String, SetKind),

    #[error("element index {index} out of range for a fence with {n} elements")]
    ElementOutOfRange { index: usize, n: usize },

    #[error("composition {0} is not palindromic")]
    NotPalindromic(String),

    #[error("index reversal on F({alpha}) is not order-reversing: cover {cover} is not reversed")]
    NotOrderReversing { alpha: String, cover: String },

    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("invalid tiling: {0}")]
    InvalidTiling(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("statistic mixes antichain and ideal atoms")]
    MixedStatistic,

    #[error("invalid toggle word: {0}")]
    InvalidWord(String),

    #[error("toggle of x{} is not admissible with respect to the word", .0 + 1)]
    NotAdmissible(usize),

    #[error("base graph contains a cycle")]
    CyclicBaseGraph,

    #[error("{0}")]
    OutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl FenceError {
    /// Short stable identifier used in machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            FenceError::InvalidComposition(_) => "invalid-composition",
            FenceError::TooManyElements { .. } => "too-many-elements",
            FenceError::KindMismatch { .. } => "kind-mismatch",
            FenceError::NotInFamily(..) => "not-in-family",
            FenceError::ElementOutOfRange { .. } => "element-out-of-range",
            FenceError::NotPalindromic(_) => "not-palindromic",
            FenceError::NotOrderReversing { .. } => "not-order-reversing",
            FenceError::CapExceeded { .. } => "cap-exceeded",
            FenceError::InvalidTiling(_) => "invalid-tiling",
            FenceError::Parse(_) => "parse",
            FenceError::MixedStatistic => "mixed-statistic",
            FenceError::InvalidWord(_) => "invalid-word",
            FenceError::NotAdmissible(_) => "not-admissible",
            FenceError::CyclicBaseGraph => "cyclic-base-graph",
            FenceError::OutOfRange(_) => "out-of-range",
            FenceError::Internal(_) => "internal",
        }
    }
}
