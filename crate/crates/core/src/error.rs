use thiserror::Error;

use crate::algebra::AlgebraId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0:?} is not a positive root of {1}")]
    NotARoot(Vec<i64>, AlgebraId),
    #[error("{0} is not in the positive root lattice")]
    NotInPositiveRootLattice(String),
    #[error("no 0/1 decomposition of {0:?} over the positive roots")]
    NoDecomposition(Vec<i64>),
    #[error("more than {cap} decompositions found")]
    SolutionCapExceeded { cap: usize },
    #[error("orbit exceeds the cap of {cap} elements")]
    OrbitTooLarge { cap: usize },
    #[error("exhaustive scan needs at most {max} positive roots, {algebra} has {actual}")]
    ExhaustiveTooLarge {
        algebra: AlgebraId,
        max: usize,
        actual: usize,
    },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {mu} is not in the Weyl orbit of {lambda}")]
    NotInOrbit { lambda: String, mu: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
