use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis is not linearly independent over the prime field")]
    DegenerateBasis,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is the singular point of the curve")]
    SingularPoint,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("roots leave the coefficient field: {0}")]
    ExtensionRequired(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
