use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty domain: {0}")]
    EmptyDomain(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalar mode mismatch: {0} vs {1}")]
    ModeMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("value {0} is not representable modulo {1}")]
    NotInvertible(String, u64),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("repeated index {0}")]
    RepeatedIndex(usize),
    #[error("monomial {0} is not in the basis")]
    OutsideBasis(String),
    #[error("invalid blocks: {0}")]
    InvalidBlocks(String),
    #[error("not a bijection of 1..{0}")]
    NotBijection(usize),
    #[error("size mismatch: partition of {partition} applied to N = {n}")]
    SizeMismatch { partition: usize, n: usize },
    #[error("partition has {parts} parts but only {n} symbols are available")]
    TooManyParts { parts: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
