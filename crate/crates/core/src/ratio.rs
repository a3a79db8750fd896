//! Exact rational arithmetic. Every probability and ratio in this crate
//! is an `ExactRatio`; nothing is ever rounded through floating point.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision rational, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(numerator: i128, denominator: i128) -> ExactRatio {
        assert!(denominator != 0, "zero denominator");
        ExactRatio(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    pub fn from_counts(numerator: u64, denominator: u64) -> ExactRatio {
        ExactRatio::new(numerator as i128, denominator as i128)
    }

    pub fn from_integer(n: u64) -> ExactRatio {
        ExactRatio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> ExactRatio {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> ExactRatio {
        ExactRatio(BigRational::one())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> ExactRatio {
        assert!(!self.is_zero(), "reciprocal of zero");
        ExactRatio(self.0.recip())
    }

    pub fn abs(&self) -> ExactRatio {
        ExactRatio(self.0.abs())
    }
}

impl PartialEq<u64> for ExactRatio {
    fn eq(&self, other: &u64) -> bool {
        *self == ExactRatio::from_integer(*other)
    }
}

impl PartialOrd<u64> for ExactRatio {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        self.partial_cmp(&ExactRatio::from_integer(*other))
    }
}

macro_rules! ratio_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &ExactRatio) -> ExactRatio {
                ExactRatio((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                (&self).$method(&rhs)
            }
        }
    };
}

ratio_binop!(Add, add);
ratio_binop!(Sub, sub);
ratio_binop!(Mul, mul);
ratio_binop!(Div, div);

impl Sum for ExactRatio {
    fn sum<I: Iterator<Item = ExactRatio>>(iter: I) -> ExactRatio {
        iter.fold(ExactRatio::zero(), |a, b| a + b)
    }
}

impl fmt::Display for ExactRatio {
    /// `num/den` in lowest terms; integers render without a denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExactRatio> {
        let parse_int = |t: &str| -> Result<BigInt> {
            t.parse::<BigInt>()
                .map_err(|_| Error::InvalidArgument(format!("bad rational `{}`", s)))
        };
        match s.split_once('/') {
            None => Ok(ExactRatio(BigRational::from_integer(parse_int(s)?))),
            Some((n, d)) => {
                let den = parse_int(d)?;
                if den.is_zero() {
                    return Err(Error::InvalidArgument(format!("bad rational `{}`", s)));
                }
                Ok(ExactRatio(BigRational::new(parse_int(n)?, den)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(ExactRatio::new(10, 60), ExactRatio::new(1, 6));
        assert_eq!(ExactRatio::new(10, 60).to_string(), "1/6");
        assert_eq!(ExactRatio::new(7, 7).to_string(), "1");
    }

    #[test]
    fn exact_comparisons() {
        assert!(ExactRatio::new(1, 6) < ExactRatio::new(11, 30));
        assert!(ExactRatio::new(1, 6) > ExactRatio::new(5, 31));
        assert_eq!(ExactRatio::new(2, 12), ExactRatio::new(1, 6));
    }

    #[test]
    fn arithmetic() {
        let total = ExactRatio::new(1, 60)
            + ExactRatio::from_counts(15, 60) * ExactRatio::new(1, 5)
            + ExactRatio::from_counts(20, 60) * ExactRatio::new(1, 10)
            + ExactRatio::from_counts(24, 60) * ExactRatio::new(1, 6);
        assert_eq!(total, ExactRatio::new(1, 6));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1/6", "17/4", "1", "0", "-3/7"] {
            let r: ExactRatio = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<ExactRatio>().is_err());
        assert!("x".parse::<ExactRatio>().is_err());
    }
}
