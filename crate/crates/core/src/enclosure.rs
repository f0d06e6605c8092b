//! Certified interval enclosures of pi, arccos/arcsin, square roots, and
//! logarithms.
//!
//! Every public function here returns a [`DyadicInterval`] that provably
//! contains the mathematical value, with width at most `2^-bits`. Internally
//! each function evaluates a series in directed-rounded dyadic arithmetic at
//! a working precision of `bits + 32` guard bits, doubling the working
//! precision if the width target is missed. Public entry points additionally
//! intersect results along a fixed power-of-two precision ladder, which makes
//! refinement literally nested: the enclosure at `2b` bits is a subset of the
//! enclosure at `b` bits.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("arccos/arcsin argument {0} lies outside [-1, 1]")]
    InverseTrigDomain(Rational),
    #[error("square root of negative rational {0}")]
    SqrtOfNegative(Rational),
    #[error("point ({0}, {1}) is not on the unit circle")]
    NotUnimodular(Rational, Rational),
    #[error("logarithm branch point: z = -1 has no principal value here")]
    LogBranchPoint,
    #[error("logarithm of non-positive rational {0}")]
    LogNonPositive(Rational),
}

/// Principal logarithm of a unimodular complex rational. The real part is
/// exactly zero; only the imaginary part carries an interval.
#[derive(Debug, Clone)]
pub struct UnitCircleLog {
    pub real: DyadicInterval,
    pub imag: DyadicInterval,
}

const GUARD_BITS: u32 = 32;

/// Smallest ladder level `8 * 2^i` that is `>= bits`.
fn ladder_top(bits: u32) -> u32 {
    let mut level = 8u32;
    while level < bits {
        level = level.saturating_mul(2);
    }
    level
}

/// Intersect enclosures along the precision ladder `8, 16, ..., ladder_top`.
/// All intermediate enclosures contain the same real number, so the
/// intersections are nonempty; the result at a higher `bits` is contained in
/// the result at any lower `bits`.
fn nested_refine<F>(bits: u32, raw: F) -> DyadicInterval
where
    F: Fn(u32) -> DyadicInterval,
{
    let top = ladder_top(bits);
    let mut level = 8u32;
    let mut acc = raw(level);
    while level < top {
        level = level.saturating_mul(2);
        let next = raw(level);
        acc = acc
            .intersect(&next)
            .expect("enclosures of one value must intersect");
    }
    acc
}

/// Run `compute` at increasing working precision until the result is at most
/// `2^-bits` wide.
fn adaptive<F>(bits: u32, compute: F) -> DyadicInterval
where
    F: Fn(u32) -> DyadicInterval,
{
    let target = Rational::pow2(-(bits as i64));
    let mut working = bits + GUARD_BITS;
    loop {
        let result = compute(working);
        if result.width() <= target {
            return result;
        }
        working = working.saturating_mul(2);
    }
}

/// Scaled-integer enclosure of `atan(1/m)`: alternating series with the
/// first omitted term bounding the tail.
fn atan_reciprocal(m: u64, working_bits: u32) -> DyadicInterval {
    let scale = working_bits as i64 + 16;
    let unit: BigInt = BigInt::one() << scale as usize;
    let m_big = BigInt::from(m);
    let m_sq = &m_big * &m_big;

    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut denom_pow = m_big.clone(); // m^(2k+1)
    let mut k: u64 = 0;
    loop {
        let q = &unit / (BigInt::from(2 * k + 1) * &denom_pow);
        if q.is_zero() {
            // Remainder after the last added term has the sign of term k and
            // absolute value at most 1 on this scale.
            if k % 2 == 0 {
                hi += 1;
            } else {
                lo -= 1;
            }
            break;
        }
        if k % 2 == 0 {
            lo += &q;
            hi += &q + 1;
        } else {
            lo -= &q + 1;
            hi -= &q;
        }
        denom_pow *= &m_sq;
        k += 1;
    }
    DyadicInterval::new(Dyadic::new(lo, -scale), Dyadic::new(hi, -scale))
        .expect("alternating series bounds ordered")
}

/// Machin's decomposition `pi = 16 atan(1/5) - 4 atan(1/239)` at raw working
/// precision, without the nesting ladder.
fn pi_raw(working_bits: u32) -> DyadicInterval {
    let a5 = atan_reciprocal(5, working_bits);
    let a239 = atan_reciprocal(239, working_bits);
    a5.scale_int(16).sub(&a239.scale_int(4))
}

/// Certified enclosure of pi, width at most `2^-bits`.
pub fn pi_enclosure(bits: u32) -> DyadicInterval {
    nested_refine(bits, |level| adaptive(level, pi_raw))
}

/// Maclaurin series for arcsin on `[0, 0.71]`-valued intervals. All series
/// terms are nonnegative there and shrink by a factor of at least
/// `x_hi^2 < 0.51` per term, so the tail after the last added term `t` is at
/// most `t * r / (1 - r)`.
fn arcsin_series(x: &DyadicInterval, working_bits: u32) -> DyadicInterval {
    debug_assert!(!x.lo().is_negative(), "series argument must be nonnegative");
    let grid = -(working_bits as i64 + 16);
    let x = x.outward_round(grid);
    let ratio = {
        let h = x.hi().to_rational();
        &h * &h
    };
    assert!(
        ratio < Rational::ratio(51, 100),
        "arcsin series argument escaped its reduction range"
    );
    let tail_factor = ratio
        .checked_div(&(Rational::one() - ratio.clone()))
        .expect("ratio below 1");

    let x_sq = x.mul(&x).outward_round(grid);
    let mut u = x.clone(); // C(2k, k) / 4^k * x^(2k+1)
    let mut sum = DyadicInterval::zero();
    let mut k: i64 = 0;
    let cutoff = Rational::pow2(grid + 4);
    loop {
        let term = u.scale_rational(&Rational::ratio(1, 2 * k + 1), grid);
        sum = sum.add(&term).outward_round(grid);
        let term_hi = term.hi().to_rational();
        if term_hi <= cutoff {
            let tail = &term_hi * &tail_factor;
            let tail_iv = DyadicInterval::from_rational_bounds(&Rational::zero(), &tail, grid);
            return sum.add(&tail_iv);
        }
        u = u
            .mul(&x_sq)
            .scale_rational(&Rational::ratio(2 * k + 1, 2 * k + 2), grid);
        k += 1;
    }
}

/// Raw arccos on `[0, 1]` rational arguments: the direct series for
/// `x <= 1/2`, the half-angle reduction `arccos(x) = 2 arcsin(sqrt((1-x)/2))`
/// for `x > 1/2`.
fn arccos_raw_nonneg(x: &Rational, working_bits: u32) -> DyadicInterval {
    let grid = -(working_bits as i64 + 16);
    let half = Rational::ratio(1, 2);
    if x <= &half {
        let xi = DyadicInterval::enclosing_rational(x, grid);
        let halfpi = pi_raw(working_bits + 8).scale_rational(&half, grid);
        halfpi.sub(&arcsin_series(&xi, working_bits))
    } else {
        let arg = (Rational::one() - x.clone()) * half;
        let root = DyadicInterval::enclosing_rational(&arg, 2 * grid)
            .sqrt(grid)
            .expect("nonnegative half-angle argument");
        arcsin_series(&root, working_bits).scale_int(2)
    }
}

/// Certified enclosure of `arccos(x)` for rational `x` in `[-1, 1]`, width at
/// most `2^-bits`. The endpoints are exact: `arccos(1) = {0}` and
/// `arccos(-1)` is the pi enclosure itself.
pub fn arccos_enclosure(x: &Rational, bits: u32) -> Result<DyadicInterval, NumericError> {
    let one = Rational::one();
    if x.abs() > one {
        return Err(NumericError::InverseTrigDomain(x.clone()));
    }
    if x == &one {
        return Ok(DyadicInterval::zero());
    }
    if x == &(-&one) {
        return Ok(pi_enclosure(bits));
    }
    let result = nested_refine(bits, |level| {
        adaptive(level, |working| {
            if x.is_negative() {
                let pos = arccos_raw_nonneg(&x.abs(), working);
                pi_raw(working + 8)
                    .sub(&pos)
                    .outward_round(-(working as i64))
            } else {
                arccos_raw_nonneg(x, working).outward_round(-(working as i64))
            }
        })
    });
    Ok(result)
}

/// Certified enclosure of `arcsin(x)` for rational `x` in `[-1, 1]`, width at
/// most `2^-bits`. Uses odd symmetry and the same half-angle reduction as
/// arccos.
pub fn arcsin_enclosure(x: &Rational, bits: u32) -> Result<DyadicInterval, NumericError> {
    if x.abs() > Rational::one() {
        return Err(NumericError::InverseTrigDomain(x.clone()));
    }
    if x.is_zero() {
        return Ok(DyadicInterval::zero());
    }
    if x.is_negative() {
        return Ok(arcsin_enclosure(&-x, bits)?.neg());
    }
    let result = nested_refine(bits, |level| {
        adaptive(level, |working| {
            let grid = -(working as i64 + 16);
            let half = Rational::ratio(1, 2);
            let raw = if x <= &half {
                let xi = DyadicInterval::enclosing_rational(x, grid);
                arcsin_series(&xi, working)
            } else {
                // arcsin(x) = pi/2 - 2 arcsin(sqrt((1-x)/2))
                let halfpi = pi_raw(working + 8).scale_rational(&half, grid);
                let arg = (Rational::one() - x.clone()) * half;
                let root = DyadicInterval::enclosing_rational(&arg, 2 * grid)
                    .sqrt(grid)
                    .expect("nonnegative half-angle argument");
                halfpi.sub(&arcsin_series(&root, working).scale_int(2))
            };
            raw.outward_round(-(working as i64))
        })
    });
    Ok(result)
}

/// Certified enclosure of `sqrt(q)` for rational `q >= 0`, width at most
/// `2^-bits`.
pub fn sqrt_enclosure(q: &Rational, bits: u32) -> Result<DyadicInterval, NumericError> {
    if q.is_negative() {
        return Err(NumericError::SqrtOfNegative(q.clone()));
    }
    Ok(nested_refine(bits, |level| {
        adaptive(level, |working| {
            let grid = -(working as i64 + 4);
            DyadicInterval::enclosing_rational(q, 2 * grid)
                .sqrt(grid)
                .expect("nonnegative radicand")
        })
    }))
}

/// Principal logarithm of the unimodular rational point `re + i*im`
/// (`re^2 + im^2 = 1` is checked exactly). The value is `i * theta` with
/// `theta = sign(im) * arccos(re)`, so the real part is exactly zero.
/// `z = -1` is rejected: its principal value sits on the branch cut.
pub fn ln_unit_circle_enclosure(
    re: &Rational,
    im: &Rational,
    bits: u32,
) -> Result<UnitCircleLog, NumericError> {
    if &(re * re) + &(im * im) != Rational::one() {
        return Err(NumericError::NotUnimodular(re.clone(), im.clone()));
    }
    if im.is_zero() {
        if re == &Rational::one() {
            return Ok(UnitCircleLog {
                real: DyadicInterval::zero(),
                imag: DyadicInterval::zero(),
            });
        }
        return Err(NumericError::LogBranchPoint);
    }
    let theta = arccos_enclosure(re, bits)?;
    let imag = if im.is_negative() { theta.neg() } else { theta };
    Ok(UnitCircleLog {
        real: DyadicInterval::zero(),
        imag,
    })
}

/// `atanh` series for rational `u` in `[0, 1/2]`: `sum u^(2k+1) / (2k+1)`,
/// positive terms, geometric tail with ratio `u^2`.
fn atanh_series(u: &Rational, working_bits: u32) -> DyadicInterval {
    let grid = -(working_bits as i64 + 16);
    let ratio = u * u;
    assert!(ratio < Rational::ratio(26, 100), "atanh argument out of range");
    let tail_factor = ratio
        .checked_div(&(Rational::one() - ratio.clone()))
        .expect("ratio below 1");
    let ui = DyadicInterval::enclosing_rational(u, grid);
    let u_sq = ui.mul(&ui).outward_round(grid);
    let mut power = ui; // u^(2k+1)
    let mut sum = DyadicInterval::zero();
    let mut k: i64 = 0;
    let cutoff = Rational::pow2(grid + 4);
    loop {
        let term = power.scale_rational(&Rational::ratio(1, 2 * k + 1), grid);
        sum = sum.add(&term).outward_round(grid);
        let term_hi = term.hi().to_rational();
        if term_hi <= cutoff {
            let tail = &term_hi * &tail_factor;
            let tail_iv = DyadicInterval::from_rational_bounds(&Rational::zero(), &tail, grid);
            return sum.add(&tail_iv);
        }
        power = power.mul(&u_sq).outward_round(grid);
        k += 1;
    }
}

/// Exponent `e` with `2^e <= q < 2^(e+1)` for positive rational `q`.
fn floor_log2(q: &Rational) -> i64 {
    debug_assert!(q.is_positive());
    let mut e = q.numer().bits() as i64 - q.denom().bits() as i64;
    // The bit-length estimate is off by at most one; fix up exactly.
    while &Rational::pow2(e) > q {
        e -= 1;
    }
    while &Rational::pow2(e + 1) <= q {
        e += 1;
    }
    e
}

/// Certified enclosure of `ln(q)` for rational `q > 0`, width at most
/// `2^-bits`. Splits `q = m * 2^e` with `m` in `[1, 2)`; then
/// `ln m = 2 atanh((m-1)/(m+1))` converges geometrically and
/// `ln 2 = 2 atanh(1/3)`.
pub fn ln_pos_rational_enclosure(q: &Rational, bits: u32) -> Result<DyadicInterval, NumericError> {
    if !q.is_positive() {
        return Err(NumericError::LogNonPositive(q.clone()));
    }
    if q == &Rational::one() {
        return Ok(DyadicInterval::zero());
    }
    let e = floor_log2(q);
    let m = q * &Rational::pow2(-e);
    let u = (&m - &Rational::one())
        .checked_div(&(&m + &Rational::one()))
        .expect("m + 1 > 0");
    Ok(nested_refine(bits, |level| {
        adaptive(level, |working| {
            let grid = -(working as i64);
            let ln_m = atanh_series(&u, working).scale_int(2);
            let result = if e == 0 {
                ln_m
            } else {
                let ln2 = atanh_series(&Rational::ratio(1, 3), working).scale_int(2);
                ln_m.add(&ln2.scale_int(e))
            };
            result.outward_round(grid)
        })
    }))
}

/// Certified enclosure of `exp(q)` for rational `q`, width at most
/// `2^-bits`. Argument is halved down to `[-1/2, 1/2]`, the Taylor series is
/// summed with a two-first-omitted-terms tail bound, and the result is
/// squared back up.
pub fn exp_rational_enclosure(q: &Rational, bits: u32) -> DyadicInterval {
    if q.is_zero() {
        return DyadicInterval::point(Dyadic::one());
    }
    // Halvings needed to bring |q| at or below 1/2.
    let mut halvings: u32 = 0;
    let mut reduced = q.clone();
    let half = Rational::ratio(1, 2);
    while reduced.abs() > half {
        reduced = reduced * half.clone();
        halvings += 1;
    }
    nested_refine(bits, |level| {
        adaptive(level, |working| {
            // Each squaring can double the relative width, so pay for the
            // halvings in guard bits.
            let working = working + 2 * halvings + 8;
            let grid = -(working as i64 + 16);
            let xi = DyadicInterval::enclosing_rational(&reduced, grid);
            let mut term = DyadicInterval::point(Dyadic::one()); // x^k / k!
            let mut sum = DyadicInterval::zero();
            let mut k: i64 = 0;
            let cutoff = Rational::pow2(grid + 4);
            loop {
                sum = sum.add(&term).outward_round(grid);
                let next = term
                    .mul(&xi)
                    .scale_rational(&Rational::ratio(1, k + 1), grid);
                let next_abs = next.hi().to_rational().abs().max(next.lo().to_rational().abs());
                if next_abs <= cutoff {
                    // |x| <= 1/2 makes the tail at most twice the next term.
                    let tail = &next_abs + &next_abs;
                    let tail_iv = DyadicInterval::from_rational_bounds(&-&tail, &tail, grid);
                    sum = sum.add(&tail_iv);
                    break;
                }
                term = next;
                k += 1;
            }
            for _ in 0..halvings {
                sum = sum.mul(&sum).outward_round(grid);
            }
            sum.outward_round(-(working as i64))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn width_at_most(iv: &DyadicInterval, bits: i64) -> bool {
        iv.width() <= Rational::pow2(-bits)
    }

    fn contains_f64(iv: &DyadicInterval, value: f64) -> bool {
        // f64 oracles carry about 1e-15 relative error; allow that slack.
        let slack = 1e-12;
        iv.lo().to_f64_lossy() - slack <= value && value <= iv.hi().to_f64_lossy() + slack
    }

    // --- pi ---

    #[test]
    fn pi_contains_double_oracle_and_meets_width() {
        for bits in [8u32, 16, 53, 64, 128] {
            let iv = pi_enclosure(bits);
            assert!(width_at_most(&iv, bits as i64), "width missed at {bits}");
            assert!(contains_f64(&iv, std::f64::consts::PI));
        }
    }

    #[test]
    fn pi_enclosures_are_nested() {
        let coarse = pi_enclosure(16);
        let mid = pi_enclosure(32);
        let fine = pi_enclosure(64);
        assert!(coarse.contains_interval(&mid));
        assert!(mid.contains_interval(&fine));
    }

    // --- arccos / arcsin ---

    #[test]
    fn arccos_hits_known_points() {
        // arccos(1/2) = pi/3, arccos(0) = pi/2, arccos(-1/2) = 2pi/3
        let cases = [
            ("1/2", std::f64::consts::FRAC_PI_3),
            ("0", std::f64::consts::FRAC_PI_2),
            ("-1/2", 2.0 * std::f64::consts::FRAC_PI_3),
            ("3/4", 0.75f64.acos()),
            ("-3/4", (-0.75f64).acos()),
            ("9/10", 0.9f64.acos()),
        ];
        for (s, oracle) in cases {
            let iv = arccos_enclosure(&rat(s), 64).unwrap();
            assert!(width_at_most(&iv, 64), "width missed at {s}");
            assert!(contains_f64(&iv, oracle), "{s}: {iv:?} misses {oracle}");
        }
    }

    #[test]
    fn arccos_endpoints_are_exact() {
        let at_one = arccos_enclosure(&Rational::one(), 64).unwrap();
        assert!(at_one.width().is_zero());
        assert!(at_one.contains_rational(&Rational::zero()));

        let at_minus_one = arccos_enclosure(&rat("-1"), 64).unwrap();
        assert_eq!(
            at_minus_one.to_rationals(),
            pi_enclosure(64).to_rationals()
        );
    }

    #[test]
    fn arccos_rejects_out_of_domain() {
        assert_eq!(
            arccos_enclosure(&rat("3/2"), 32).unwrap_err(),
            NumericError::InverseTrigDomain(rat("3/2"))
        );
        assert!(arccos_enclosure(&rat("-1000001/1000000"), 32).is_err());
    }

    #[test]
    fn arccos_refinement_is_nested() {
        let x = rat("3/4");
        let coarse = arccos_enclosure(&x, 24).unwrap();
        let fine = arccos_enclosure(&x, 96).unwrap();
        assert!(coarse.contains_interval(&fine));
    }

    #[test]
    fn arcsin_matches_double_oracle_across_reduction_branches() {
        for s in ["0", "1/8", "1/2", "5/8", "99/100", "1", "-1/3", "-1"] {
            let x = rat(s);
            let iv = arcsin_enclosure(&x, 64).unwrap();
            assert!(width_at_most(&iv, 64));
            assert!(contains_f64(&iv, x.to_f64_lossy().asin()), "{s}");
        }
    }

    #[test]
    fn arcsin_plus_arccos_is_half_pi() {
        // arcsin(x) + arccos(x) = pi/2, checked as interval containment.
        let halfpi = pi_enclosure(128).scale_rational(&rat("1/2"), -130);
        for s in ["-9/10", "-1/2", "0", "1/3", "1/2", "7/10", "49/50"] {
            let x = rat(s);
            let sum = arcsin_enclosure(&x, 64)
                .unwrap()
                .add(&arccos_enclosure(&x, 64).unwrap());
            assert!(sum.contains_interval(&halfpi), "{s}: {sum:?}");
        }
    }

    // --- sqrt ---

    #[test]
    fn sqrt_encloses_irrational_and_exact_cases() {
        let r2 = sqrt_enclosure(&rat("2"), 64).unwrap();
        assert!(width_at_most(&r2, 64));
        assert!(contains_f64(&r2, std::f64::consts::SQRT_2));

        let exact = sqrt_enclosure(&rat("9/4"), 64).unwrap();
        assert!(exact.contains_rational(&rat("3/2")));

        assert!(sqrt_enclosure(&rat("-1"), 16).is_err());
    }

    // --- unit-circle log ---

    #[test]
    fn ln_unit_circle_on_sixth_root_of_unity() {
        // z = 1/2 + i sqrt(3)/2 is not rational in both coordinates; use the
        // rational point (3/5, 4/5) instead: ln z = i * arccos(3/5).
        let log = ln_unit_circle_enclosure(&rat("3/5"), &rat("4/5"), 64).unwrap();
        assert!(log.real.width().is_zero());
        assert!(log.real.contains_rational(&Rational::zero()));
        assert!(contains_f64(&log.imag, 0.6f64.acos()));

        let conj = ln_unit_circle_enclosure(&rat("3/5"), &rat("-4/5"), 64).unwrap();
        assert!(contains_f64(&conj.imag, -(0.6f64.acos())));
    }

    #[test]
    fn ln_unit_circle_rejects_off_circle_and_branch_point() {
        assert_eq!(
            ln_unit_circle_enclosure(&rat("1/2"), &rat("1/2"), 32).unwrap_err(),
            NumericError::NotUnimodular(rat("1/2"), rat("1/2"))
        );
        assert_eq!(
            ln_unit_circle_enclosure(&rat("-1"), &rat("0"), 32).unwrap_err(),
            NumericError::LogBranchPoint
        );
        let at_one = ln_unit_circle_enclosure(&rat("1"), &rat("0"), 32).unwrap();
        assert!(at_one.imag.width().is_zero());
    }

    // --- real log / exp ---

    #[test]
    fn ln_matches_double_oracle() {
        for s in ["2", "3", "1/2", "10", "7/5", "1000000", "1/1000"] {
            let q = rat(s);
            let iv = ln_pos_rational_enclosure(&q, 64).unwrap();
            assert!(width_at_most(&iv, 64), "{s}");
            assert!(contains_f64(&iv, q.to_f64_lossy().ln()), "{s}: {iv:?}");
        }
        assert!(ln_pos_rational_enclosure(&rat("0"), 16).is_err());
        assert!(ln_pos_rational_enclosure(&rat("-3"), 16).is_err());
    }

    #[test]
    fn exp_matches_double_oracle() {
        for s in ["0", "1", "-1", "1/2", "-7/3", "5"] {
            let q = rat(s);
            let iv = exp_rational_enclosure(&q, 64);
            assert!(width_at_most(&iv, 64), "{s}: width {}", iv.width());
            let oracle = q.to_f64_lossy().exp();
            let slack = oracle * 1e-12;
            assert!(
                iv.lo().to_f64_lossy() - slack <= oracle
                    && oracle <= iv.hi().to_f64_lossy() + slack,
                "{s}"
            );
        }
    }

    #[test]
    fn exp_ln_round_trip_contains_argument() {
        let q = rat("7/3");
        let ln_iv = ln_pos_rational_enclosure(&q, 80).unwrap();
        // exp of both endpoints must bracket q.
        let lo = exp_rational_enclosure(&ln_iv.lo().to_rational(), 80);
        let hi = exp_rational_enclosure(&ln_iv.hi().to_rational(), 80);
        assert!(lo.lo().to_rational() <= q);
        assert!(hi.hi().to_rational() >= q);
    }
}
