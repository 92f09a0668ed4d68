//! The field abstraction the exact linear algebra and polynomial code is written against.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// An exact field of characteristic zero.
///
/// Everything in [`crate::exact_math`] is generic over this trait. Division by
/// zero is a caller bug and panics, the same way it does for the underlying
/// big-rational type.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_int(v: i64) -> Self;

    fn from_bigint(v: BigInt) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self
    }
}

impl Field for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
}
