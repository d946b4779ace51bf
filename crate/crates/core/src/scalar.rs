//! Exact rational scalars.
//!
//! Every coefficient that appears in a term or a type is a [`Scalar`]. The
//! representation is always reduced: the denominator is positive and coprime
//! with the numerator, so zero is uniquely `0/1` and structural equality is
//! value equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarParseError {
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in scalar literal `{0}`")]
    ZeroDenominator(String),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        (0..exp).fold(Scalar::one(), |acc, _| &acc * self)
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }
}

pub fn add(a: &Scalar, b: &Scalar) -> Scalar {
    a + b
}

pub fn mul(a: &Scalar, b: &Scalar) -> Scalar {
    a * b
}

pub fn neg(a: &Scalar) -> Scalar {
    -a
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    text.parse()
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let malformed = || ScalarParseError::Malformed(text.to_string());
        let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        let (sign, body) = match text.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, text),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        if !digits(num) || !den.is_none_or(digits) {
            return Err(malformed());
        }
        let num: BigInt = num.parse().map_err(|_| malformed())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| malformed())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ScalarParseError::ZeroDenominator(text.to_string()));
        }
        Ok(Scalar(BigRational::new(num * sign, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($tr::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(add(&q("1/4"), &q("3/4")), Scalar::one());
        assert_eq!(add(&q("3/8"), &q("5/8")), Scalar::one());
        assert_eq!(mul(&q("2"), &q("1/4")), q("1/2"));
        assert_eq!(mul(&q("1/2"), &q("1/2")), q("1/4"));
        assert_eq!(neg(&q("1/2")), q("-1/2"));
        assert_eq!(parse_scalar("3/8").unwrap(), Scalar::ratio(3, 8));
    }

    #[test]
    fn zero_is_unique() {
        let z = q("0/7");
        assert!(z.is_zero());
        assert_eq!(z, Scalar::zero());
        assert_eq!(z.to_string(), "0");
        assert_eq!(q("-0").to_string(), "0");
        assert_eq!(q("4/6").to_string(), "2/3");
        assert_eq!(q("-4/6").denom(), &BigInt::from(3));
    }

    #[test]
    fn malformed_literals() {
        assert!(matches!(parse_scalar("1/0"), Err(ScalarParseError::ZeroDenominator(_))));
        for bad in ["", "-", "1/", "/2", "1.5", "a", "1/-2", "--1", "+1"] {
            assert!(
                matches!(parse_scalar(bad), Err(ScalarParseError::Malformed(_))),
                "{bad}"
            );
        }
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &neg(&a)).is_zero());
            prop_assert_eq!(&a + &Scalar::zero(), a.clone());
            prop_assert_eq!(&a * &Scalar::one(), a.clone());
        }

        #[test]
        fn print_parse_identity(a in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
        }
    }
}
