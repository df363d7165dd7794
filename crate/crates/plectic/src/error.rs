use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("number of variables differs: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("g = {g} exceeds the configured limit {limit}")]
    TooManyVariables { g: usize, limit: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("not a subspace: {0}")]
    NotContained(String),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
