use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("omega must be at least 1")]
    ZeroOmega,
    #[error("k = {k} is outside [0, {n}]")]
    KOutOfRange { k: usize, n: usize },
    #[error("S must be nonempty")]
    EmptyS,
    #[error("S contains {value}, which is outside [1, {n}]")]
    SOutOfRange { value: usize, n: usize },
    #[error("S contains {0} more than once")]
    DuplicateS(usize),
    #[error("length {length} is outside [0, {max}]")]
    LengthOutOfRange { length: usize, max: usize },
    #[error("malformed juggling pattern: {0}")]
    MalformedPattern(String),
    #[error("invalid l-vector: {0}")]
    InvalidLVector(String),
    #[error("{sub:?} is not a subset of {sup:?}")]
    NotSubset { sub: Vec<usize>, sup: Vec<usize> },
    #[error("instances differ in (n, k, omega)")]
    IncompatibleInstances,
    #[error("{0:?} is not an irreducible component index for this instance")]
    NotAComponent(Vec<usize>),
    #[error("search budget of {budget} candidates exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
