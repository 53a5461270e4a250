use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("blow-up count {0} outside supported range {1}..={2}")]
    KOutOfRange(usize, usize, usize),
    #[error("dimension mismatch: k = {0} vs k = {1}")]
    DimensionMismatch(usize, usize),
    #[error("coefficient vector has length {got}, expected {want}")]
    BadLength { want: usize, got: usize },
    #[error("area of H must be positive")]
    NonPositiveNu,
    #[error("class has non-positive square {0}")]
    NotPositiveSquare(i64),
    #[error("form has non-positive square")]
    FormNotPositiveSquare,
    #[error("degenerate class: H-coefficient is zero after sign normalization")]
    DegenerateClass,
    #[error("not a root (need square -2 and trivial pairing with K): {0}")]
    NotARoot(String),
    #[error("class has non-negative square {0}")]
    NotNegativeSquare(i64),
    #[error("not reduced: {0}")]
    NotReduced(String),
    #[error("form is not balanced: c_i >= c_(i+1) + c_(i+2) for every i = 1..3")]
    NotBalanced,
    #[error("normalization undefined: class on the wall nu = c_1")]
    OnWall,
    #[error("blow-up sizes must be strictly smaller than every exceptional area of the base")]
    BlowupTooLarge,
    #[error("blow-up size groups must come in strictly decreasing size order")]
    BlowupNotSorted,
    #[error("face {0} is not of type A")]
    NotTypeA(String),
    #[error("unsupported diagram component: not a path or a single-branch star")]
    UnsupportedDiagram,
    #[error("invalid face label: {0}")]
    BadFaceLabel(String),
    #[error("generator index out of range")]
    BadGenerator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
