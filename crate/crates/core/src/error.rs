use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("entry {value} out of range [0, {bound}]")]
    EntryOutOfRange { value: u64, bound: u64 },
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("exponent does not fit in a signed 64-bit integer")]
    ExponentOverflow,
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("expected an undirected graph")]
    DirectedInput,
    #[error("no finite solution exists")]
    Infinite,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
