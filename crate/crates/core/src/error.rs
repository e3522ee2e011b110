use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("divisor has {got} exceptional coefficients, surface has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("divisor on P2 must have b = 0")]
    P2HasB,
    #[error("rank-0 class has no slope or discriminant")]
    RankZero,
    #[error("negative rank")]
    NegativeRank,
    #[error("surface is not an admissible blowup")]
    InadmissibleSurface,
    #[error("non-integral {0}")]
    NonIntegral(&'static str),
    #[error("operation is not available on P2")]
    P2Unsupported,
    #[error("cohomology unknown for {0}")]
    Incomplete(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
