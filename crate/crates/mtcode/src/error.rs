use thiserror::Error;

/// Errors produced by field, polynomial, matrix, and code operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field spec: {0}")]
    InvalidFieldSpec(String),

    /// Two values from different field specs were combined.
    #[error("field spec mismatch")]
    SpecMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{upsilon} does not divide the extension degree {e}")]
    BadSubfieldIndex { upsilon: usize, e: usize },

    #[error("zero shift constant")]
    ZeroShift,

    #[error("matrix is not square")]
    NotSquare,

    #[error("rank-deficient GPM stack")]
    RankDeficient,

    /// Exact division failed while factoring one matrix through another.
    #[error("d not in row module of g")]
    NotInRowModule,

    /// A polynomial division that must be exact left a remainder.
    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A documented precondition of an operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A proven invariant failed to hold; always a bug.
    #[error("internal invariant failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
