//! The exact integer scalar abstraction.
//!
//! Everything that produces large numbers (binomials, Clebsch-Gordan values,
//! generating-function coefficients) is generic over [`ExactInt`]. Fixed-width
//! backends (`i64`, `i128`) are fast and report overflow as an error; `BigInt`
//! never overflows.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait ExactInt:
    Clone
    + Debug
    + Display
    + Send
    + Sync
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + 'static
{
}

impl<T> ExactInt for T where
    T: Clone
        + Debug
        + Display
        + Send
        + Sync
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + 'static
{
}

pub(crate) fn lift<T: ExactInt>(v: i128, what: &'static str) -> Result<T> {
    T::from_i128(v).ok_or(Error::Overflow(what))
}

pub(crate) fn add<T: ExactInt>(x: &T, y: &T, what: &'static str) -> Result<T> {
    x.checked_add(y).ok_or(Error::Overflow(what))
}

pub(crate) fn sub<T: ExactInt>(x: &T, y: &T, what: &'static str) -> Result<T> {
    x.checked_sub(y).ok_or(Error::Overflow(what))
}

pub(crate) fn mul<T: ExactInt>(x: &T, y: &T, what: &'static str) -> Result<T> {
    x.checked_mul(y).ok_or(Error::Overflow(what))
}
