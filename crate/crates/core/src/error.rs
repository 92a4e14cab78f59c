use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("undeclared variable `{name}` at position {pos}")]
    UndeclaredVariable { name: String, pos: usize },

    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("invalid variable context: {0}")]
    InvalidContext(String),

    #[error("operands live in different variable contexts")]
    ContextMismatch,

    #[error("exponent overflow (exponents are limited to 32 bits)")]
    ExponentOverflow,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("inexact division, nonzero remainder: {remainder}")]
    InexactDivision { remainder: String },

    #[error("no image assigned to variable `{0}`")]
    MissingAssignment(String),

    #[error("term `{term}` does not have degree exactly 1 in the linear variables")]
    NotLinear { term: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("variable name `{0}` already exists in the context")]
    NameCollision(String),

    #[error("resource ceiling exceeded after {pairs} pairs (basis size {basis_len}, queue {queue_len})")]
    ResourceLimit {
        pairs: usize,
        basis_len: usize,
        queue_len: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
