use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series constant term is not invertible")]
    ZeroConstantTerm,
    #[error("series truncated at order {have}, need {needed}")]
    TruncationTooShort { needed: usize, have: usize },
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no invertible leading block in the inequality matrix")]
    SingularBasisBlock,
    #[error("vector lies on a wall")]
    NonGenericVector,
    #[error("chamber enumeration is limited to rank {max}")]
    RankTooLarge { max: usize },
    #[error("no generic deformation direction found")]
    NoGenericDirection,
    #[error("nested set is not proper")]
    NotProper,
    #[error("not in the root lattice")]
    LatticeViolation,
    #[error("pole order {found} exceeds certified bound {bound}")]
    BoundViolated { found: usize, bound: usize },
    #[error("size guard exceeded: {size} > {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("samples do not fit a quasipolynomial of degree {degree} and period {period}")]
    InconsistentSamples { degree: usize, period: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
