use thiserror::Error;

use crate::exact_math::MathError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Math(#[from] MathError),
    #[error("elements of sl_{left} and sl_{right} cannot be combined")]
    AlgebraMismatch { left: usize, right: usize },
    #[error("n must be at least 2, got {0}")]
    InvalidRank(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix has nonzero trace {0}")]
    NotTraceless(String),
    #[error("element is not regular (centralizer dimension {centralizer_dim}, rank {rank})")]
    NotRegular { centralizer_dim: usize, rank: usize },
    #[error("element is not diagonal")]
    NotDiagonal,
    #[error("eigenvalues of the semisimple part are not all in Q(i)")]
    UnsupportedEigenvalues,
    #[error("element does not lie in the subalgebra")]
    NotInSubalgebra,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("element is nilpotent: {0}")]
    Nilpotent(String),
    #[error("element is not strongly regular for this system")]
    NotStronglyRegular,
    #[error("shift values must be pairwise distinct in each row")]
    RepeatedLambda,
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
