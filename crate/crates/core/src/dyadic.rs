//! Dyadic numbers and directed-rounded intervals.
//!
//! A [`Dyadic`] is `mantissa * 2^exponent` with a `BigInt` mantissa. Addition,
//! subtraction, and multiplication are exact; rounding only ever happens at
//! explicit grid-snapping calls, and always outward when an interval is
//! involved. Intervals produced here are the certificates the rest of the
//! crate hands around: a value is "known" exactly when it is trapped between
//! two dyadics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval endpoints out of order")]
    EndpointsOutOfOrder,
    #[error("division by an interval containing zero")]
    DivisorContainsZero,
    #[error("square root of an interval below zero")]
    SqrtOfNegative,
}

/// `mantissa * 2^exponent`. Zero is stored as `(0, 0)`; otherwise the
/// mantissa is odd, so each value has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        let mut d = Dyadic { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: 0,
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0)
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        let shift = self.mantissa.trailing_zeros().unwrap_or(0);
        if shift > 0 {
            self.mantissa >>= shift as usize;
            self.exponent += shift as i64;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn to_rational(&self) -> Rational {
        if self.exponent >= 0 {
            Rational::from_int(&self.mantissa << self.exponent as usize)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exponent) as usize)
                .expect("power of two denominator")
        }
    }

    /// Exact when the input denominator is a power of two.
    pub fn from_rational_exact(q: &Rational) -> Option<Self> {
        let denom = q.denom();
        // A positive denominator is a power of two iff it has a single set bit.
        if denom.magnitude().count_ones() != 1 {
            return None;
        }
        let exp = denom.trailing_zeros().unwrap_or(0) as i64;
        Some(Dyadic::new(q.numer().clone(), -exp))
    }

    /// Largest multiple of `2^grid_exp` that is `<= q`.
    pub fn floor_from_rational(q: &Rational, grid_exp: i64) -> Self {
        let scaled = q * &Rational::pow2(-grid_exp);
        Dyadic::new(scaled.floor(), grid_exp)
    }

    /// Smallest multiple of `2^grid_exp` that is `>= q`.
    pub fn ceil_from_rational(q: &Rational, grid_exp: i64) -> Self {
        let scaled = q * &Rational::pow2(-grid_exp);
        Dyadic::new(scaled.ceil(), grid_exp)
    }

    /// Round down to the grid `2^grid_exp`. Identity when already on grid.
    pub fn floor_to_grid(&self, grid_exp: i64) -> Self {
        if self.is_zero() || self.exponent >= grid_exp {
            return self.clone();
        }
        let shift = (grid_exp - self.exponent) as usize;
        // Arithmetic shift right of a BigInt floors toward negative infinity.
        Dyadic::new(&self.mantissa >> shift, grid_exp)
    }

    /// Round up to the grid `2^grid_exp`.
    pub fn ceil_to_grid(&self, grid_exp: i64) -> Self {
        if self.is_zero() || self.exponent >= grid_exp {
            return self.clone();
        }
        let shift = (grid_exp - self.exponent) as usize;
        let floored = &self.mantissa >> shift;
        let rounded = if (&floored << shift) == self.mantissa {
            floored
        } else {
            floored + 1
        };
        Dyadic::new(rounded, grid_exp)
    }

    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let exp = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - exp) as usize;
        let b = &rhs.mantissa << (rhs.exponent - exp) as usize;
        Dyadic::new(a + b, exp)
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exponent + rhs.exponent)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    pub fn shift(&self, by: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + by,
        }
    }

    /// Largest multiple of `2^grid_exp` with square `<= self`; requires
    /// `self >= 0`. Uses the integer Newton floor square root.
    pub fn sqrt_floor(&self, grid_exp: i64) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // floor(sqrt(m * 2^e) / 2^g) = floor(sqrt(floor(m * 2^(e - 2g))))
        let shift = self.exponent - 2 * grid_exp;
        let scaled: BigInt = if shift >= 0 {
            &self.mantissa << shift as usize
        } else {
            &self.mantissa >> (-shift) as usize
        };
        Dyadic::new(scaled.sqrt(), grid_exp)
    }

    /// Smallest multiple of `2^grid_exp` with square `>= self`; requires
    /// `self >= 0`.
    pub fn sqrt_ceil(&self, grid_exp: i64) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let shift = self.exponent - 2 * grid_exp;
        let (scaled, exact_scale): (BigInt, bool) = if shift >= 0 {
            (&self.mantissa << shift as usize, true)
        } else {
            let down = &self.mantissa >> (-shift) as usize;
            let exact = (&down << (-shift) as usize) == self.mantissa;
            (down, exact)
        };
        let root = scaled.sqrt();
        let root = if exact_scale && &root * &root == scaled {
            root
        } else {
            root + 1
        };
        Dyadic::new(root, grid_exp)
    }

    /// Best-effort `f64` rendering; not certified, display use only.
    pub fn to_f64_lossy(&self) -> f64 {
        self.to_rational().to_f64_lossy()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.sub(other);
        if diff.mantissa.is_zero() {
            Ordering::Equal
        } else if diff.mantissa.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// A closed interval `[lo, hi]` with dyadic endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::EndpointsOutOfOrder);
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn point(value: Dyadic) -> Self {
        DyadicInterval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn zero() -> Self {
        DyadicInterval::point(Dyadic::zero())
    }

    /// Smallest grid-`2^grid_exp` interval containing the rational `q`.
    pub fn enclosing_rational(q: &Rational, grid_exp: i64) -> Self {
        DyadicInterval {
            lo: Dyadic::floor_from_rational(q, grid_exp),
            hi: Dyadic::ceil_from_rational(q, grid_exp),
        }
    }

    /// Interval `[lo, hi]` enclosing both rational arguments outward.
    pub fn from_rational_bounds(lo: &Rational, hi: &Rational, grid_exp: i64) -> Self {
        assert!(lo <= hi, "bounds out of order");
        DyadicInterval {
            lo: Dyadic::floor_from_rational(lo, grid_exp),
            hi: Dyadic::ceil_from_rational(hi, grid_exp),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        self.hi.sub(&self.lo).to_rational()
    }

    pub fn midpoint(&self) -> Rational {
        (self.lo.to_rational() + self.hi.to_rational()) * Rational::ratio(1, 2)
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        &self.lo.to_rational() <= q && q <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &DyadicInterval) -> Result<Self, IntervalError> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        DyadicInterval::new(lo, hi)
    }

    /// True when every point of the interval is strictly below `q`.
    pub fn strictly_below(&self, q: &Rational) -> bool {
        &self.hi.to_rational() < q
    }

    /// True when every point of the interval is strictly above `q`.
    pub fn strictly_above(&self, q: &Rational) -> bool {
        &self.lo.to_rational() > q
    }

    pub fn add(&self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.add(&rhs.lo),
            hi: self.hi.add(&rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.sub(&rhs.hi),
            hi: self.hi.sub(&rhs.lo),
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    /// Exact interval product (min/max over endpoint products).
    pub fn mul(&self, rhs: &DyadicInterval) -> DyadicInterval {
        let candidates = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = candidates.iter().min().unwrap().clone();
        let hi = candidates.iter().max().unwrap().clone();
        DyadicInterval { lo, hi }
    }

    pub fn scale_int(&self, k: i64) -> DyadicInterval {
        let kd = Dyadic::from_int(k);
        if k >= 0 {
            DyadicInterval {
                lo: self.lo.mul(&kd),
                hi: self.hi.mul(&kd),
            }
        } else {
            DyadicInterval {
                lo: self.hi.mul(&kd),
                hi: self.lo.mul(&kd),
            }
        }
    }

    /// Multiply by an exact rational, rounding outward to `2^grid_exp`.
    pub fn scale_rational(&self, q: &Rational, grid_exp: i64) -> DyadicInterval {
        let (a, b) = if q.is_negative() {
            (self.hi.to_rational() * q.clone(), self.lo.to_rational() * q.clone())
        } else {
            (self.lo.to_rational() * q.clone(), self.hi.to_rational() * q.clone())
        };
        DyadicInterval {
            lo: Dyadic::floor_from_rational(&a, grid_exp),
            hi: Dyadic::ceil_from_rational(&b, grid_exp),
        }
    }

    /// Interval quotient; the divisor must be strictly positive. Rounds
    /// outward to `2^grid_exp`.
    pub fn div(&self, rhs: &DyadicInterval, grid_exp: i64) -> Result<DyadicInterval, IntervalError> {
        if rhs.lo.is_zero() || rhs.lo.is_negative() {
            return Err(IntervalError::DivisorContainsZero);
        }
        let corners = [
            self.lo.to_rational().checked_div(&rhs.lo.to_rational()).unwrap(),
            self.lo.to_rational().checked_div(&rhs.hi.to_rational()).unwrap(),
            self.hi.to_rational().checked_div(&rhs.lo.to_rational()).unwrap(),
            self.hi.to_rational().checked_div(&rhs.hi.to_rational()).unwrap(),
        ];
        let lo = corners.iter().min().unwrap();
        let hi = corners.iter().max().unwrap();
        Ok(DyadicInterval {
            lo: Dyadic::floor_from_rational(lo, grid_exp),
            hi: Dyadic::ceil_from_rational(hi, grid_exp),
        })
    }

    /// Enclosure of the square root; requires `lo >= 0`. Rounds outward to
    /// `2^grid_exp`.
    pub fn sqrt(&self, grid_exp: i64) -> Result<DyadicInterval, IntervalError> {
        if self.lo.is_negative() {
            return Err(IntervalError::SqrtOfNegative);
        }
        Ok(DyadicInterval {
            lo: self.lo.sqrt_floor(grid_exp),
            hi: self.hi.sqrt_ceil(grid_exp),
        })
    }

    /// Round both endpoints outward to the grid `2^grid_exp`. Used after
    /// exact interval operations to keep mantissas bounded.
    pub fn outward_round(&self, grid_exp: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.floor_to_grid(grid_exp),
            hi: self.hi.ceil_to_grid(grid_exp),
        }
    }

    /// `[lo_rat, hi_rat]` as exact rationals.
    pub fn to_rationals(&self) -> (Rational, Rational) {
        (self.lo.to_rational(), self.hi.to_rational())
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
