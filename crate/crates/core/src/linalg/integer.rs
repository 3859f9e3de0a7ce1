//! Scalar abstraction for exact integer arithmetic.
//!
//! Algorithms are written once against [`Integer`]. The fixed-width
//! implementation reports overflow through `None`; callers rerun the same
//! computation over [`BigInt`] when that happens, so results never depend
//! on machine word size.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Integer: Clone + Eq + Ord + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;

    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;

    fn checked_add(&self, rhs: &Self) -> Option<Self>;
    fn checked_sub(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul(&self, rhs: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Floor division and the matching nonnegative-or-same-sign remainder.
    fn div_floor(&self, rhs: &Self) -> (Self, Self);

    fn abs_cmp(&self, rhs: &Self) -> std::cmp::Ordering;

    fn checked_abs(&self) -> Option<Self> {
        if self.is_negative() {
            self.checked_neg()
        } else {
            Some(self.clone())
        }
    }

    fn is_unit(&self) -> bool {
        *self == Self::one() || Some(self.clone()) == Self::one().checked_neg()
    }
}

impl Integer for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        i128::checked_add(*self, *rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        i128::checked_sub(*self, *rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        i128::checked_mul(*self, *rhs)
    }
    fn checked_neg(&self) -> Option<Self> {
        i128::checked_neg(*self)
    }
    fn div_floor(&self, rhs: &Self) -> (Self, Self) {
        let (mut q, mut r) = (self / rhs, self % rhs);
        if r != 0 && ((r < 0) != (*rhs < 0)) {
            q -= 1;
            r += rhs;
        }
        (q, r)
    }
    fn abs_cmp(&self, rhs: &Self) -> std::cmp::Ordering {
        self.unsigned_abs().cmp(&rhs.unsigned_abs())
    }
}

impl Integer for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, rhs: &Self) -> (Self, Self) {
        self.div_mod_floor(rhs)
    }
    fn abs_cmp(&self, rhs: &Self) -> std::cmp::Ordering {
        self.magnitude().cmp(rhs.magnitude())
    }
}

/// Marker error: a fixed-width computation left its range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub(crate) trait OptionExt<T> {
    fn ovf(self) -> Result<T, Overflow>;
}

impl<T> OptionExt<T> for Option<T> {
    fn ovf(self) -> Result<T, Overflow> {
        self.ok_or(Overflow)
    }
}

/// Runs `f` with `i128` scalars and falls back to [`BigInt`] on overflow.
pub fn small_then_big<R>(
    small: impl FnOnce() -> Result<R, Overflow>,
    big: impl FnOnce() -> Result<R, Overflow>,
) -> R {
    match small() {
        Ok(r) => r,
        Err(Overflow) => big().expect("arbitrary precision arithmetic cannot overflow"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_division_matches_between_backends() {
        for a in -7i64..=7 {
            for b in [-3i64, -2, 1, 2, 5] {
                let (q, r) = Integer::div_floor(&(a as i128), &(b as i128));
                let (qb, rb) = Integer::div_floor(&BigInt::from(a), &BigInt::from(b));
                assert_eq!(BigInt::from(q), qb);
                assert_eq!(BigInt::from(r), rb);
                assert_eq!(q * b as i128 + r, a as i128);
            }
        }
    }

    #[test]
    fn i128_reports_overflow() {
        assert!(Integer::checked_add(&i128::MAX, &1).is_none());
        assert!(Integer::checked_neg(&i128::MIN).is_none());
        assert!(Integer::checked_abs(&i128::MIN).is_none());
    }
}
