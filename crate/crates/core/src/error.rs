use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("generator s_{index} does not exist in B_{n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("word contains a zero entry")]
    ZeroEntry,

    #[error("rank {n} exceeds the configured cap {cap}")]
    RankCapExceeded { n: usize, cap: usize },

    #[error("expected a sum in the {expected} basis, got {found}")]
    BasisMismatch { expected: String, found: String },

    #[error("{0} is not a minimal coset representative for the parabolic subgroup")]
    NotMinimalCosetRepresentative(String),

    #[error("invalid shuffle: {0}")]
    InvalidShuffle(String),

    #[error("invalid component signature: {0}")]
    InvalidSignature(String),

    #[error("invalid pseudo-composition: {0}")]
    InvalidComposition(String),

    #[error("realization width {width} is too small for grade {grade}")]
    WidthTooSmall { width: usize, grade: usize },

    #[error("polynomial is not quasisymmetric of type B: nonzero residual after extraction")]
    NotQuasisymmetric,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
