use thiserror::Error;

/// Errors produced by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("element does not belong to the field F_{p}^{m}")]
    ForeignElement { p: u32, m: usize },

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("gram matrix must be {m}x{m}, got {rows}x{cols}")]
    GramShape { m: usize, rows: usize, cols: usize },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("quadratic form is degenerate (rank {rank} < {m})")]
    Degenerate { rank: usize, m: usize },

    #[error("trace-form scale must be nonzero")]
    ZeroScale,

    #[error("vector has length {got}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {r} out of range 0..={max}")]
    DimensionOutOfRange { r: usize, max: usize },

    #[error("defining set D_{level} is empty; the code is unusable")]
    EmptyDefiningSet { level: u32 },

    #[error(
        "code dimension {dimension} < m = {m}: the hierarchy search requires \
         an injective message map (code dimension equal to m)"
    )]
    DegenerateDimension { dimension: usize, m: usize },

    #[error(
        "closed forms need m >= 3 (got m = {m}); for m <= 2 the code may \
         collapse to a lower dimension and the formulas do not apply"
    )]
    SmallDegree { m: usize },

    #[error("invalid rank {rank} for a {dim}-dimensional space")]
    InvalidRank { rank: usize, dim: usize },

    #[error("branch disagreement at r = {r}: {left} != {right}")]
    BranchDisagreement { r: usize, left: i128, right: i128 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("self-dual subspaces need an even ambient dimension (got m = {m})")]
    OddDimension { m: usize },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
