//! Scalar abstraction shared by every algebraic structure in the crate.
//!
//! All computations are exact: equality must be decidable, so only exact
//! fields implement [`Field`]. The crate provides implementations for the
//! Gaussian rationals ([`GaussianRational`](crate::GaussianRational)) and for
//! plain rationals ([`BigRational`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ScalarError;

/// An exact field of characteristic zero.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// `num / den`; panics when `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// The value as a rational integer, if it is one.
    fn to_integer(&self) -> Option<BigInt>;

    fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let inv = rhs.inverse().ok_or(ScalarError::DivisionByZero)?;
        Ok(self.clone() * inv)
    }

    /// Exact integer power; negative exponents invert first.
    fn pow_int(&self, n: i64) -> Result<Self, ScalarError> {
        let base = if n < 0 {
            self.inverse().ok_or(ScalarError::NonInvertible)?
        } else {
            self.clone()
        };
        let mut exp = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * &sq;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }

    /// `Some(n)` when the value is a positive integer that fits in `i64`.
    fn as_positive_int(&self) -> Option<i64> {
        self.to_integer()
            .and_then(|n| n.to_i64())
            .filter(|&n| n > 0)
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_pow_and_integers() {
        let two = BigRational::from_i64(2);
        assert_eq!(two.pow_int(-2).unwrap(), BigRational::from_ratio(1, 4));
        assert_eq!(two.pow_int(0).unwrap(), BigRational::one());
        assert_eq!(
            BigRational::zero().pow_int(-1),
            Err(ScalarError::NonInvertible)
        );
        assert_eq!(BigRational::from_i64(3).as_positive_int(), Some(3));
        assert_eq!(BigRational::from_i64(0).as_positive_int(), None);
        assert_eq!(BigRational::from_ratio(3, 2).as_positive_int(), None);
    }
}
