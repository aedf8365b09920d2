//! Scalar types for coordinates and functional values.
//!
//! Everything here is exact: comparisons of functional values decide the
//! orientation, so a scalar must have a total order and no rounding.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// A totally ordered ring element usable as a coordinate.
pub trait Scalar: Num + Clone + Ord + fmt::Debug + fmt::Display + FromStr {}

impl<T> Scalar for T where T: Num + Clone + Ord + fmt::Debug + fmt::Display + FromStr {}

/// A scalar with exact division, needed by the family generators and by
/// random functional sampling.
pub trait ExactField: Scalar + Signed + FromPrimitive {
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).expect("numerator in range") / Self::from_i64(den).expect("denominator in range")
    }
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed + fmt::Debug + fmt::Display + FromStr + FromPrimitive,
    Ratio<T>: Scalar + Signed + FromPrimitive,
{
}

/// Parses `"p/q"` or `"p"`. The result is always in lowest terms with a
/// positive denominator.
pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    text.trim().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Q = Ratio<BigInt>;

    #[test]
    fn parse_is_canonical() {
        let a: Q = parse_scalar("-6/4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b: Q = parse_scalar(" 10/5 ").unwrap();
        assert_eq!(b.to_string(), "2");
        assert!(parse_scalar::<Q>("1/0").is_none());
        assert!(parse_scalar::<Q>("abc").is_none());
    }

    #[test]
    fn ratio_helper() {
        let h = Q::ratio(2, 4);
        assert_eq!(h, Q::new(BigInt::from(1), BigInt::from(2)));
        let s = Ratio::<i64>::ratio(-3, 9);
        assert_eq!(s.to_string(), "-1/3");
    }
}
