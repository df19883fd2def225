use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("expected a positive integer, got {0}")]
    NonPositive(BigInt),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid lattice vector: {0}")]
    InvalidVector(String),
    #[error("cone index {index} out of range for dimension {dim}")]
    ConeIndex { index: usize, dim: usize },
    #[error("eps must lie in (0, 1], got {0}")]
    EpsOutOfRange(String),
    #[error("theta must lie in (0, 1), got {0}")]
    ThetaOutOfRange(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("enumeration budget exceeded: estimated {estimated} points, cap {cap}")]
    Budget { estimated: BigInt, cap: u64 },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("polytope incidence check failed: {0}")]
    Incidence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
