use thiserror::Error;

/// Validation and I/O failures surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra must have at least one block")]
    EmptyAlgebra,

    #[error("block size at position {position} must be a positive integer, got {value}")]
    NonPositiveBlock { position: usize, value: i64 },

    #[error("malformed algebra `{input}`: {reason}")]
    AlgebraSyntax { input: String, reason: String },

    #[error("element has {actual} blocks, algebra expects {expected}")]
    BlockCount { expected: usize, actual: usize },

    #[error("block {block} is {rows}x{cols}, expected {expected}x{expected}")]
    BlockShape {
        block: usize,
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("block {block} is not square ({rows}x{cols})")]
    NonSquare {
        block: usize,
        rows: usize,
        cols: usize,
    },

    #[error("block index {index} out of range 1..={count}")]
    BlockIndex { index: usize, count: usize },

    #[error("invalid multiplicity matrix: {0}")]
    Matrix(String),

    #[error("block {block} is not Hermitian (deviation {deviation:e})")]
    NotHermitian { block: usize, deviation: f64 },

    #[error("invalid optimizer config: {0}")]
    Config(String),

    #[error("{0}")]
    Invalid(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
