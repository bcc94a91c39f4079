use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} requires a nonnegative argument, got {value}")]
    Negative { what: &'static str, value: i64 },

    #[error("boundary closed forms need k >= 3, got {0}")]
    BoundaryOutOfRange(i64),

    #[error("rel1 recursion inapplicable at (m={m}, k={k}): {reason}")]
    RecursionInapplicable { m: i64, k: i64, reason: &'static str },

    #[error("identity {id} expects {expected} coordinates, got {got}")]
    Arity { id: &'static str, expected: usize, got: usize },

    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("line {line}: unbound variable `{name}`")]
    UnboundVariable { line: usize, name: String },

    #[error("variable `{0}` cannot be eliminated: {1}")]
    NotEliminable(String, String),

    #[error("elimination order must list every variable exactly once: {0}")]
    BadOrder(String),

    #[error("modulus q must be odd and at least 3, got {0}")]
    BadModulus(i64),

    #[error("factorial of negative value {value} at in-region point {point}")]
    RegionInconsistent { point: String, value: i64 },

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
}
