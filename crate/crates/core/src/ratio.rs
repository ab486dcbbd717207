//! Exact non-negative rational arithmetic.
//!
//! Every expansion quantity in this crate (ε, α, δ, Cheeger values, QI
//! constants) is a [`Ratio`]: arbitrary precision, always in lowest terms,
//! never floating point.

use std::fmt;
use std::ops::{Add, Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact non-negative rational number stored in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ratio(BigRational);

impl Ratio {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Parameter(
                "ratio denominator must be positive".into(),
            ));
        }
        Ok(Self(BigRational::new(numer.into(), denom.into())))
    }

    /// Ratio of two counts; `denom` must be positive.
    pub fn from_counts(numer: usize, denom: usize) -> Self {
        assert!(denom > 0, "count denominator must be positive");
        Self(BigRational::new(
            BigInt::from(numer as u64),
            BigInt::from(denom as u64),
        ))
    }

    pub fn from_integer(value: u64) -> Self {
        Self(BigRational::from_integer(value.into()))
    }

    /// Wraps a non-negative big integer.
    pub fn from_big_integer(value: BigInt) -> Self {
        assert!(!value.is_negative(), "ratios are non-negative");
        Self(BigRational::from_integer(value))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn half() -> Self {
        Self(BigRational::new(1.into(), 2.into()))
    }

    /// Parses `"p/q"` or a bare integer `"p"`. Signs, decimals and any other
    /// notation are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (parse_digits(a)?, parse_digits(b)?),
            None => (parse_digits(s)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::Parameter(format!(
                "invalid rational {s:?}: denominator must be positive"
            )));
        }
        Ok(Self(BigRational::new(num, den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(&self, rhs: &Ratio) -> Option<Ratio> {
        let diff = &self.0 - &rhs.0;
        if diff.is_negative() {
            None
        } else {
            Some(Self(diff))
        }
    }

    /// Integer power with exact rational result. Negative exponents require a
    /// nonzero base.
    pub fn pow(&self, exp: i32) -> Ratio {
        if exp == 0 {
            return Ratio::one();
        }
        let e = exp.unsigned_abs();
        let num = Pow::pow(self.0.numer(), e);
        let den = Pow::pow(self.0.denom(), e);
        if exp > 0 {
            Self(BigRational::new(num, den))
        } else {
            assert!(
                !self.is_zero(),
                "zero ratio cannot be raised to a negative power"
            );
            Self(BigRational::new(den, num))
        }
    }

    /// ⌊self⌋ as a usize, when it fits.
    pub fn floor_usize(&self) -> Option<usize> {
        (self.0.numer() / self.0.denom()).to_usize()
    }

    /// The exact integer value as a u32, when the ratio is integral and fits.
    pub fn to_u32_exact(&self) -> Option<u32> {
        if self.is_integer() {
            self.0.numer().to_u32()
        } else {
            None
        }
    }

    /// Numerator/denominator as u64s, when both fit; fast path for scans.
    pub(crate) fn as_u64_pair(&self) -> Option<(u64, u64)> {
        Some((self.0.numer().to_u64()?, self.0.denom().to_u64()?))
    }

    pub(crate) fn as_big(&self) -> &BigRational {
        &self.0
    }
}

fn parse_digits(s: &str) -> Result<BigInt> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parameter(format!(
            "invalid rational component {s:?}: expected a string of decimal digits (decimal points and signs are rejected)"
        )));
    }
    s.parse::<BigInt>()
        .map_err(|e| Error::Parameter(format!("invalid rational component {s:?}: {e}")))
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Add for &Ratio {
    type Output = Ratio;
    fn add(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 + &rhs.0)
    }
}

impl Mul for &Ratio {
    type Output = Ratio;
    fn mul(self, rhs: &Ratio) -> Ratio {
        Ratio(&self.0 * &rhs.0)
    }
}

impl Div for &Ratio {
    type Output = Ratio;
    fn div(self, rhs: &Ratio) -> Ratio {
        assert!(!rhs.is_zero(), "division by zero ratio");
        Ratio(&self.0 / &rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fraction_and_integer() {
        assert_eq!(Ratio::parse("3/8").unwrap(), Ratio::new(3, 8).unwrap());
        assert_eq!(Ratio::parse("7").unwrap(), Ratio::from_integer(7));
        assert_eq!(Ratio::parse(" 10/4 ").unwrap(), Ratio::new(5, 2).unwrap());
    }

    #[test]
    fn parse_rejects_decimals_signs_and_zero_denominator() {
        assert!(Ratio::parse("0.5").is_err());
        assert!(Ratio::parse("-1/2").is_err());
        assert!(Ratio::parse("+3").is_err());
        assert!(Ratio::parse("1/0").is_err());
        assert!(Ratio::parse("").is_err());
        assert!(Ratio::parse("1e3").is_err());
    }

    #[test]
    fn stored_in_lowest_terms() {
        let r = Ratio::new(6, 8).unwrap();
        assert_eq!(r.to_string(), "3/4");
        assert_eq!(Ratio::from_integer(5).to_string(), "5/1");
    }

    #[test]
    fn exact_ordering_and_arithmetic() {
        let a = Ratio::new(1, 3).unwrap();
        let b = Ratio::new(1, 2).unwrap();
        assert!(a < b);
        assert_eq!(&a + &b, Ratio::new(5, 6).unwrap());
        assert_eq!(&a * &b, Ratio::new(1, 6).unwrap());
        assert_eq!(&b / &a, Ratio::new(3, 2).unwrap());
    }

    #[test]
    fn checked_sub_guards_negativity() {
        let a = Ratio::new(1, 3).unwrap();
        let b = Ratio::new(1, 2).unwrap();
        assert_eq!(b.checked_sub(&a), Some(Ratio::new(1, 6).unwrap()));
        assert_eq!(a.checked_sub(&b), None);
    }

    #[test]
    fn integer_powers() {
        let l = Ratio::new(3, 8).unwrap();
        assert_eq!(l.pow(0), Ratio::one());
        assert_eq!(l.pow(2), Ratio::new(9, 64).unwrap());
        assert_eq!(l.pow(-1), Ratio::new(8, 3).unwrap());
    }

    #[test]
    fn floor_of_reciprocal() {
        let alpha = Ratio::new(3, 10).unwrap();
        let inv = &Ratio::one() / &alpha;
        assert_eq!(inv.floor_usize(), Some(3));
    }
}
