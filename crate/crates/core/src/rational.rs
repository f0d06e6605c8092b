//! Arbitrary-precision rational numbers in lowest terms.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational number, always stored in lowest terms with a positive
/// denominator. Wraps `num_rational::BigRational`, which maintains exactly
/// that normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal: {0:?}")]
    Parse(String),
}

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, RationalError> {
        if denom.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `numer / denom` for machine integers; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^exp` for any sign of `exp`.
    pub fn pow2(exp: i64) -> Self {
        let one = BigInt::one();
        if exp >= 0 {
            Rational(BigRational::from_integer(one << exp as usize))
        } else {
            Rational(BigRational::new(one.clone(), one << (-exp) as usize))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Best-effort `f64` rendering; not certified, display use only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }
}

impl fmt::Display for Rational {
    /// Canonical form `p/q`, or just `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Rational {
    type Err = RationalError;

    /// Accepts `p` or `p/q` with optional leading sign on `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RationalError::Parse(s.to_string());
        match s.split_once('/') {
            None => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational::from_int(n))
            }
            Some((p, q)) => {
                let numer: BigInt = p.trim().parse().map_err(|_| bad())?;
                let denom: BigInt = q.trim().parse().map_err(|_| bad())?;
                if denom.is_zero() {
                    return Err(RationalError::DivisionByZero);
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use `checked_div` where the divisor is data.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn normal_form_lowest_terms_positive_denominator() {
        let x = Rational::new(BigInt::from(6), BigInt::from(-8)).unwrap();
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(4));
        assert_eq!(x.to_string(), "-3/4");
    }

    #[test]
    fn display_integers_without_denominator() {
        assert_eq!(r("8/4").to_string(), "2");
        assert_eq!(r("0/7").to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["3/7", "-22/7", "5", "-5", "0"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn parse_rejects_garbage_and_zero_denominator() {
        assert!(Rational::from_str("a/b").is_err());
        assert!(Rational::from_str("1/2/3").is_err());
        assert_eq!(
            Rational::from_str("1/0").unwrap_err(),
            RationalError::DivisionByZero
        );
    }

    #[test]
    fn arithmetic_matches_hand_values() {
        let a = r("1/3");
        let b = r("1/6");
        assert_eq!((&a + &b).to_string(), "1/2");
        assert_eq!((&a - &b).to_string(), "1/6");
        assert_eq!((&a * &b).to_string(), "1/18");
        assert_eq!((&a / &b).to_string(), "2");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            r("1/2").checked_div(&Rational::zero()).unwrap_err(),
            RationalError::DivisionByZero
        );
        assert_eq!(
            Rational::zero().recip().unwrap_err(),
            RationalError::DivisionByZero
        );
    }

    #[test]
    fn pow2_both_signs() {
        assert_eq!(Rational::pow2(5).to_string(), "32");
        assert_eq!(Rational::pow2(-3).to_string(), "1/8");
        assert_eq!(Rational::pow2(0).to_string(), "1");
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(r("7/2").floor(), BigInt::from(3));
        assert_eq!(r("7/2").ceil(), BigInt::from(4));
        assert_eq!(r("-7/2").floor(), BigInt::from(-4));
        assert_eq!(r("-7/2").ceil(), BigInt::from(-3));
    }
}
