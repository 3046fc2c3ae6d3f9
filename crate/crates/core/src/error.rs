use thiserror::Error;

use crate::npm::{Family, SubspaceIndex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("least common multiple of an empty list")]
    EmptyList,

    #[error("residue {k} is not coprime to period {period}")]
    InvalidResidue { period: usize, k: usize },

    #[error("period must be at least 1")]
    ZeroPeriod,

    #[error("signal length must be at least 1")]
    EmptySignal,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("operation requires family {expected:?}, got {actual:?}")]
    WrongFamily { expected: Family, actual: Family },

    #[error("family {0:?} is not supported by this operation")]
    UnsupportedFamily(Family),

    #[error("no column {0:?} in this matrix")]
    LookupMiss(SubspaceIndex),

    #[error("no subspace with period {0}")]
    NoSuchPeriod(usize),

    #[error("length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("matrix is numerically singular")]
    Singular,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("need at least two candidate periods, got {0}")]
    TooFewCandidates(usize),

    #[error("candidate basis has {width} columns but {rows} rows")]
    NonSquareCandidateBasis { rows: usize, width: usize },

    #[error("candidate basis is rank deficient: rank {rank} < {size}")]
    RankDeficient { rank: usize, size: usize },

    #[error("invalid band: {0}")]
    InvalidBand(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
