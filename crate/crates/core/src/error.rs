use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("linear system has no solution")]
    NoSolution,

    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: String },

    #[error("dimension {n} is not admissible: {reason}")]
    WrongResidue { n: usize, reason: String },

    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("{what} requires a non-degenerate bilinear form")]
    NondegenerateRequired { what: &'static str },

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("incompatible coefficient fields {0} and {1}")]
    FieldMismatch(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("registry: {0}")]
    Registry(String),

    #[error("registry entry '{name}': {msg}")]
    RegistryMismatch { name: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
