//! Coefficient rings for the exact algebra.
//!
//! Everything polynomial in this crate is generic over an integer-like
//! coefficient type. [`num_bigint::BigInt`] is the production choice; the
//! fixed-width types are handy for tests and small experiments but can
//! overflow.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact Euclidean coefficient ring (a subring of Z in practice).
pub trait Coefficient:
    Clone + Debug + Display + Eq + Ord + Signed + Integer + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("coefficient type cannot represent value")
    }

    fn parse_decimal(s: &str) -> Option<Self> {
        <Self as num_traits::Num>::from_str_radix(s, 10).ok()
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Signed
        + Integer
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn parse_roundtrip() {
        assert_eq!(<BigInt as Coefficient>::parse_decimal("-17"), Some(BigInt::from(-17)));
        assert_eq!(<i64 as Coefficient>::parse_decimal("42"), Some(42));
        assert_eq!(<i64 as Coefficient>::parse_decimal("x"), None);
    }
}
