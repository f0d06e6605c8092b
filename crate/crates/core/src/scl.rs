//! Rotation numbers and stable commutator length for a parabolic-limit
//! family of two-by-two matrices, and the derived volume sequence `alpha`.
//!
//! The family is
//!
//! ```text
//! g_n = [  2      1 + 2^(1-n) ]
//!       [ -1     -2^(-n)      ]
//! ```
//!
//! with determinant 1 and trace `2 - 2^(-n)`. For an elliptic element
//! (`|tr| <= 2`) the canonical lift has rotation number
//! `arccos(tr/2) / pi`, and its stable commutator length is half the
//! absolute rotation number. The sequence `alpha(n) = 24 arccos(1 - 2^(-n-1)) / pi`
//! is the simplicial-volume normalization of the same angles; `alpha(0) = 8`
//! exactly, and `alpha` decreases strictly to 0.

use crate::dyadic::DyadicInterval;
use crate::enclosure::{self, NumericError};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SclError {
    #[error("matrix determinant is {0}, not 1")]
    NotUnimodular(Rational),
    #[error("trace {0} outside [-2, 2]: no elliptic rotation number")]
    NotElliptic(Rational),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A 2x2 rational matrix of determinant 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Matrix2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, SclError> {
        let det = &(&a * &d) - &(&b * &c);
        if det != Rational::one() {
            return Err(SclError::NotUnimodular(det));
        }
        Ok(Matrix2 { a, b, c, d })
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    pub fn det(&self) -> Rational {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, rhs: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.c),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.d),
            c: &(&self.c * &rhs.a) + &(&self.d * &rhs.c),
            d: &(&self.c * &rhs.b) + &(&self.d * &rhs.d),
        }
    }
}

/// The family member `g_n`, `n >= 1`. All entries are dyadic rationals and
/// the trace is `2 - 2^(-n)`.
pub fn g_matrix(n: u32) -> Matrix2 {
    assert!(n >= 1, "the matrix family starts at n = 1");
    let exp = -(n as i64);
    Matrix2::new(
        Rational::from_int(2),
        Rational::one() + Rational::pow2(1 + exp),
        Rational::from_int(-1),
        -Rational::pow2(exp),
    )
    .expect("family members are unimodular by construction")
}

/// Rotation number of the canonical lift: `arccos(tr/2) / pi`, an enclosure
/// of width at most `2^-bits`. Requires `|tr| <= 2`.
pub fn rot_lift(matrix: &Matrix2, bits: u32) -> Result<DyadicInterval, SclError> {
    let half_trace = matrix.trace() * Rational::ratio(1, 2);
    if half_trace.abs() > Rational::one() {
        return Err(SclError::NotElliptic(matrix.trace()));
    }
    Ok(arccos_over_pi(&half_trace, bits)?)
}

/// Stable commutator length of the lift: half the absolute rotation number.
pub fn scl_lift(matrix: &Matrix2, bits: u32) -> Result<DyadicInterval, SclError> {
    // Rotation numbers from arccos lie in [0, 1], so |rot|/2 = rot/2.
    let rot = rot_lift(matrix, bits + 1)?;
    Ok(rot.scale_rational(&Rational::ratio(1, 2), -(bits as i64) - 2))
}

/// A certified enclosure of `arccos(x)/pi` of width at most `2^-bits`,
/// refined adaptively until the quotient meets the target.
fn arccos_over_pi(x: &Rational, bits: u32) -> Result<DyadicInterval, NumericError> {
    let target = Rational::pow2(-(bits as i64));
    let mut working = bits + 8;
    loop {
        let theta = enclosure::arccos_enclosure(x, working)?;
        let pi = enclosure::pi_enclosure(working);
        let quotient = theta
            .div(&pi, -(working as i64))
            .expect("pi enclosure is strictly positive");
        if quotient.width() <= target {
            return Ok(quotient);
        }
        working = working.saturating_mul(2);
    }
}

/// Enclosure (and exact value where one exists) of a member of the `alpha`
/// sequence.
#[derive(Debug, Clone)]
pub struct AlphaValue {
    pub enclosure: DyadicInterval,
    /// Set only at `n = 0`, where the angle is `pi/3` and the value is
    /// exactly 8.
    pub exact: Option<Rational>,
}

/// `alpha(n) = 24 arccos(1 - 2^(-n-1)) / pi`, enclosed to width `2^-bits`.
pub fn alpha(n: u32, bits: u32) -> AlphaValue {
    let x = Rational::one() - Rational::pow2(-(n as i64) - 1);
    let target = Rational::pow2(-(bits as i64));
    let mut working = bits + 16;
    let enclosure = loop {
        let quotient = arccos_over_pi(&x, working).expect("argument is inside [-1, 1]");
        let value = quotient.scale_int(24).outward_round(-(working as i64));
        if value.width() <= target {
            break value;
        }
        working = working.saturating_mul(2);
    };
    AlphaValue {
        enclosure,
        exact: (n == 0).then(|| Rational::from_int(8)),
    }
}

/// `K * alpha(n)`: the volume value for multiplicity parameter `K >= 1`.
pub fn simvol_value(n: u32, k: u32, bits: u32) -> AlphaValue {
    assert!(k >= 1, "multiplicity parameter must be at least 1");
    // Pay for the scale factor in extra bits before multiplying through.
    let extra = 32 - (k.leading_zeros());
    let base = alpha(n, bits + extra);
    AlphaValue {
        enclosure: base
            .enclosure
            .scale_int(k as i64)
            .outward_round(-(bits as i64) - 1),
        exact: base.exact.map(|e| e * Rational::from_int(k as i64)),
    }
}

/// `K * alpha(n) / 48`: the stable commutator length of the `n`-th lift
/// raised to multiplicity `K`.
pub fn scl_h(n: u32, k: u32, bits: u32) -> AlphaValue {
    assert!(k >= 1, "multiplicity parameter must be at least 1");
    let base = simvol_value(n, k, bits + 6);
    AlphaValue {
        enclosure: base
            .enclosure
            .scale_rational(&Rational::ratio(1, 48), -(bits as i64) - 1),
        exact: base.exact.map(|e| e * Rational::ratio(1, 48)),
    }
}
