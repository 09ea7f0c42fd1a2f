use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("division by zero modulo {modulus}")]
    DivisionByZero { modulus: u64 },
    #[error("{value} has no inverse modulo {modulus}")]
    NoInverse { value: u64, modulus: u64 },
    #[error("n must be odd and > 2 (got {0})")]
    OddModulus(u64),
    #[error("invalid dimension {0}")]
    Dimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed automaton: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
