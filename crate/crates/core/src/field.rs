//! Scalar abstraction for the exact linear algebra in this crate.
//!
//! Everything downstream (matrices, polynomials, Sturm sequences) is generic
//! over a [`Field`], built from the `num-traits` operator traits.  The two
//! instantiations used here are [`crate::Scalar`] (cyclotomic numbers) and
//! `BigRational` (for characteristic polynomials of integer matrices).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An exact field: the bound every generic routine in this crate needs.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
