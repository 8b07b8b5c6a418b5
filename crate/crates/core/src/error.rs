use thiserror::Error;

/// Errors raised by the library. Every variant names the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid orientation character: {0}")]
    InvalidCharacter(String),

    #[error("operation requires a finite group, got {0}")]
    InfiniteGroup(String),

    #[error("d^2 != 0: boundary d_{degree} composed with d_{next} is nonzero", next = .degree - 1)]
    NotAComplex { degree: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("unsupported orientation character: {0}")]
    UnsupportedCharacter(String),

    #[error("bar resolution needs {required} generators, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("extension classes live in different Ext groups")]
    ContextMismatch,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("invalid lens space L({p},{q}): need p >= 2, 1 <= q < p, gcd(p,q) = 1")]
    InvalidLens { p: i64, q: i64 },

    #[error("linking forms have different orders {0} and {1}")]
    OrderMismatch(u64, u64),

    #[error("records have different 1-types: {0}")]
    TypeMismatch(String),

    #[error("expected a complex of length {expected}, got length {actual}")]
    WrongLength { expected: usize, actual: usize },

    #[error("orbit enumeration exceeded {0} elements")]
    OrbitTooLarge(usize),

    #[error("criteria disagree: {0}")]
    InconsistentCriteria(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
