use thiserror::Error;

/// Errors raised by the toric-kit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("duplicate point at index {index}")]
    DuplicatePoint { index: usize },

    #[error("negative entry at index {index}")]
    NegativeEntry { index: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polytope does not have integer vertices")]
    NotLattice,

    #[error("input is not full-dimensional ({dim} < {ambient})")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("cone is not pointed (lineality dimension {0})")]
    NotPointed(usize),

    #[error("expected {expected} polytopes, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("point set does not lie on an affine hyperplane")]
    Inhomogeneous,

    #[error("binomial does not lie in the toric ideal")]
    NotInIdeal,

    #[error("S-pair budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("resultant vanishes identically: the solution set has dimension at least one")]
    NonIsolated,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integer overflow in exponent arithmetic")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
