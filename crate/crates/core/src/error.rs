use thiserror::Error;

/// Errors raised while building or checking algebraic objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input tables or files with the wrong shape, out-of-range entries,
    /// or rows that are not bijections.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// A request whose search space or basis size exceeds the built-in budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular")]
    Singular,

    /// Matrix inversion only works over the rationals.
    #[error("matrix has non-constant polynomial entries")]
    NotRational,

    #[error("no value assigned to indeterminate {0}")]
    MissingAssignment(String),

    /// The input does not satisfy the axioms an operation requires.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two routes to the same twist disagree (cocycle failure).
    #[error("admissibility failure in {identity}: first difference at {witness:?}")]
    Admissibility {
        identity: String,
        witness: Vec<usize>,
    },

    /// A consistency check that cannot fail for valid input did fail.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
