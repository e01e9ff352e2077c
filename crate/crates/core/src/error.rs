use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole order of the zero function is undefined")]
    ZeroFunction,
    #[error("pole at the anchor point in variable {var}: denominator {factor} vanishes")]
    Pole { var: String, factor: String },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("intertwiner space has dimension {dim}, expected 1")]
    NonGenericSolution { dim: usize },
    #[error("R-matrix methods disagree for (k, l, N) = ({k}, {l}, {n}) at entry ({row}, {col})")]
    MethodMismatch { k: usize, l: usize, n: usize, row: usize, col: usize },
    #[error("internal decomposition failure: {0}")]
    Decomposition(String),
    #[error("relation check failed: {0}")]
    RelationFailure(String),
    #[error("module construction rejected: {0}")]
    Rejected(String),
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("left action does not descend to the quotient: {0}")]
    BimoduleViolation(String),
    #[error("no normal form found while straightening {0}")]
    Straightening(String),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
