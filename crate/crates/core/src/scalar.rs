//! Exact integer scalars for exchange matrices and g-vectors.
//!
//! Everything in this crate is generic over [`Scalar`]. Entries are never
//! allowed to wrap: every arithmetic step goes through the checked helpers
//! below and surfaces [`Overflow`] instead. For [`num_bigint::BigInt`] the
//! checks never fire.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};
use thiserror::Error;

/// A fixed-width scalar could not hold an intermediate value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow in exact arithmetic")]
pub struct Overflow;

/// Exact signed integer ring usable as a matrix entry.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + FromStr
    + 'static
{
    fn of_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("every scalar holds an i64")
    }

    fn add_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(other).ok_or(Overflow)
    }

    fn sub_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_sub(other).ok_or(Overflow)
    }

    fn mul_c(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(other).ok_or(Overflow)
    }

    /// Negation that refuses `MIN` for fixed-width types.
    fn neg_c(&self) -> Result<Self, Overflow> {
        Self::zero().sub_c(self)
    }

    /// `max(self, 0)`.
    fn pos_part(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            Self::zero()
        }
    }
}

impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_helpers_report_overflow() {
        assert_eq!(i64::MAX.add_c(&1), Err(Overflow));
        assert_eq!(i64::MIN.neg_c(), Err(Overflow));
        assert_eq!(3i64.mul_c(&-4), Ok(-12));
        let big = BigInt::from(i64::MAX);
        assert!(big.add_c(&BigInt::from(1)).is_ok());
    }

    #[test]
    fn pos_part_clamps() {
        assert_eq!((-3i64).pos_part(), 0);
        assert_eq!(5i64.pos_part(), 5);
    }
}
