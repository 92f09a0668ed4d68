//! Exact construction and verification of argument-shift integrable systems on sl_n.

pub mod error;
pub mod exact_math;
pub mod components;
pub mod corpus;
pub mod elements;
pub mod flags;
pub mod lie;
pub mod mf;
pub mod properties;
pub mod sampling;

pub use error::{Error, Result};
pub use exact_math::{Field, GaussianRational, MathError};

/// The base field Q(i).
pub type Scalar = GaussianRational;
pub type ExactMatrix = exact_math::Matrix<Scalar>;
pub type RationalMatrix = exact_math::Matrix<num_rational::BigRational>;
pub type Poly = exact_math::MPoly<Scalar>;
pub type UniPoly = exact_math::UPoly<Scalar>;
