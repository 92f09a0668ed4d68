//! Exact arithmetic over the Gaussian rationals: scalars, matrices, polynomials.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod upoly;

use thiserror::Error;

pub use field::Field;
pub use matrix::Matrix;
pub use poly::{MPoly, Monomial, PolyRing};
pub use scalar::GaussianRational;
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("shape error: {0}")]
    Shape(String),
}
