use thiserror::Error;

/// Errors raised by the kernel.
///
/// Variants split roughly into user errors (bad input, unsupported sizes) and
/// mathematical obstructions that the descent engine reacts to (a wrong
/// supergroup hypothesis, a non-separable invariant, an inconsistent ideal).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("empty generator list with no degree given")]
    EmptyGenerators,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroups at positions {0} and {1} are conjugate")]
    DuplicateClass(usize, usize),

    #[error("arity mismatch: expected {expected} values, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("numeric precision exhausted at {0} bits")]
    PrecisionExhausted(u32),

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("ideal extension produced the unit ideal")]
    InconsistentIdeal,

    #[error("ideal is not triangular in lex order: {0}")]
    NotTriangular(String),

    #[error("ideal containment violated: {0}")]
    Containment(String),

    #[error("no primitive invariant found within a budget of {0} exponent vectors")]
    InvariantSearchExhausted(usize),

    #[error("characteristic polynomial is not a perfect {0}-th power")]
    NotPerfectPower(usize),

    #[error("algebra dimension {dim} does not match group order {order}")]
    DimensionMismatch { dim: usize, order: usize },

    #[error("no separable resolvent after {0} invariants")]
    SeparabilityExhausted(usize),

    #[error("degree {0} is outside the supported range")]
    UnsupportedDegree(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
