use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::AlgebraError;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `p/q` as a [`Rational`]. Panics on `q == 0`.
pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// A commutative field with exact equality.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;
    fn try_inv(&self) -> Result<Self, AlgebraError>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.clone() * rhs.try_inv()?)
    }

    /// Integer power; negative exponents invert.
    fn try_pow(&self, exp: i64) -> Result<Self, AlgebraError> {
        let base = if exp < 0 { self.try_inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        Ok(acc)
    }

    fn product<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().fold(Self::one(), |acc, x| acc * x)
    }

    fn sum<I: IntoIterator<Item = Self>>(items: I) -> Self {
        items.into_iter().fold(Self::zero(), |acc, x| acc + x)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if Zero::is_zero(self) {
            Err(AlgebraError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}
