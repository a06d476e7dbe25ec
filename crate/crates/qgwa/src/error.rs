//! Crate-wide error type.

/// Errors produced by the library.
///
/// Every fallible operation returns [`Result`]; panics are reserved for
/// programming errors such as mixing scalars from two different ambient
/// fields.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Division by zero in the ambient field.
    #[error("division by zero")]
    DivisionByZero,

    /// An operation that requires a root of unity got something else.
    #[error("not a root of unity: {0}")]
    NotRootOfUnity(String),

    /// The zero polynomial has no degree, support class, or ell-invariant.
    #[error("the zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),

    /// Algebra construction data violated a constructor condition.
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    /// Action or Taft data violated a constructor condition.
    #[error("invalid action data: {0}")]
    InvalidAction(String),

    /// Parameters outside the supported range of an operation.
    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    /// A documented precondition of an operation was not met.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An internal consistency check failed; indicates a bug or a gap in
    /// the underlying theory for the given input.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// Parse error with 1-based line and column.
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
