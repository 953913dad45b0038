use thiserror::Error;

#[derive(Debug, Error)]
pub enum WernerError {
    #[error("bit string length {0} outside 1..=24")]
    LengthOutOfRange(usize),
    #[error("value {value:#x} does not fit in {len} bits")]
    ValueTooWide { value: u32, len: usize },
    #[error("position {pos} outside 1..={len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("position {0} listed more than once")]
    DuplicatePosition(usize),
    #[error("positions must satisfy 1 <= a < b <= {len}, got a={a}, b={b}")]
    InvalidPair { a: usize, b: usize, len: usize },
    #[error("parameter {name}={value} outside {min}..={max}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("invalid chord diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagrams have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("bit string is periodic; its cyclic state vanishes")]
    PeriodicString,
    #[error("expected an even number of qubits, got {0}")]
    OddQubitCount(usize),
    #[error("scale exponents {0} and {1} differ by an odd amount")]
    ScaleParity(i32, i32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operator is not Hermitian")]
    NotHermitian,
    #[error("linear system is singular")]
    Singular,
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, WernerError>;
