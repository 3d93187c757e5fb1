use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown generator `{name}` at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error("quotient is not abelian: {0}")]
    NonAbelianQuotient(String),

    #[error("coset enumeration exceeded the limit of {limit} rows")]
    LimitExceeded { limit: usize },

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("hypothesis failed: {0}")]
    Hypothesis(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unknown catalog group `{0}`")]
    UnknownGroup(String),
}
