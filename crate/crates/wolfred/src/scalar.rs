//! Scalar abstraction so the algebra operations run over IEEE doubles or
//! exact rationals with the same code path.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

/// Ring operations needed by the normed-algebra layer.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i8(v: i8) -> Self;
}

impl Scalar for f64 {
    fn from_i8(v: i8) -> Self {
        v as f64
    }
}

impl Scalar for BigRational {
    fn from_i8(v: i8) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Fixed-width exact rationals; fast, but the caller owns overflow safety
/// (fine for bounded identity checks on small numerators).
pub type Rational128 = num_rational::Ratio<i128>;

impl Scalar for Rational128 {
    fn from_i8(v: i8) -> Self {
        Rational128::from_integer(v as i128)
    }
}

impl Scalar for i128 {
    fn from_i8(v: i8) -> Self {
        v as i128
    }
}

/// Shorthand for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
