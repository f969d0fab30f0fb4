use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quiver has an oriented cycle through vertex {0}")]
    Cycle(usize),
    #[error("arrow {0} is a loop at vertex {1}")]
    Loop(usize, usize),
    #[error("vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Hom/Ext dimensions vary across sample primes: {0}")]
    PrimeInstability(String),
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("module has a projective direct summand")]
    ProjectiveSummand,
    #[error("not polynomial-count: {0}")]
    NotPolynomialCount(String),
    #[error("rational function is not a Laurent polynomial: {0}")]
    NotLaurent(String),
    #[error("invalid mutation direction {k} for rank {n}")]
    InvalidDirection { k: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("calibration: {0}")]
    Calibration(String),
    #[error("stratum Euler characteristics sum to {got}, expected {expected}")]
    StratumSum { expected: i64, got: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
