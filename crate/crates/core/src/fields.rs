//! Exact arithmetic in real-quadratic radical extensions of the rationals,
//! optionally adjoining `i`, with integer-relation searches over the
//! associated rotation angles.
//!
//! A [`RadicalBasis`] fixes a list of pairwise-coprime squarefree integers
//! `m_1 < m_2 < ...` (each at least 2) and an optional imaginary unit. The
//! field it spans has one basis element per subset: `i^a * sqrt(m_S)` with
//! `m_S` the product over the subset. A [`FieldElement`] stores one rational
//! coefficient per subset mask, so equality, arithmetic, inversion, and
//! complex conjugation are all exact.
//!
//! On top of that sit the unit-modulus generators
//! `gamma_p = (2^(p-1) - 1)/2^(p-1) + i sqrt(2^p - 1)/2^(p-1)`, whose angles
//! drive two searches: an exact one for multiplicative relations
//! `prod gamma^(n_j) = 1`, and a certified numeric one for integer relations
//! among the angles and pi.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::dyadic::DyadicInterval;
use crate::enclosure::{self, NumericError};
use crate::rational::Rational;

/// Trial division covers every prime up to this bound.
const TRIAL_LIMIT: u64 = 1_000_000;
/// A cofactor below the square of the trial bound has no two prime factors
/// left, so it is certified prime.
const COFACTOR_LIMIT: u64 = 1_000_000_000_000;
/// Largest coefficient vector we are willing to handle: four adjoined
/// square roots plus the imaginary unit.
const MAX_DIMENSION: usize = 16;
/// Work ceiling for the relation searches.
const SEARCH_LIMIT: u64 = 10_000_000;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("cannot certify a factorization of {n}: cofactor {cofactor} exceeds {COFACTOR_LIMIT}")]
    FactorizationIncomplete { n: u64, cofactor: u64 },
    #[error("radicand {0} must be at least 2")]
    RadicandTooSmall(u64),
    #[error("radicand {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("radicands {0} and {1} share the factor {2}")]
    NotCoprime(u64, u64, u64),
    #[error("basis would have dimension {0}, more than {MAX_DIMENSION}")]
    DimensionTooLarge(usize),
    #[error("division by zero field element")]
    DivisionByZero,
    #[error("Mersenne exponent {0} outside the supported range 2..=31")]
    ExponentOutOfRange(u32),
    #[error("generator list must be non-empty")]
    EmptyGenerators,
    #[error("search space of {0} tuples exceeds the {SEARCH_LIMIT} work ceiling")]
    SearchSpaceTooLarge(u64),
    #[error("certified relation search needs at least 128 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("cosine value {0} outside [-1, 1]")]
    CosineDomain(Rational),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

// --- integer factorization -------------------------------------------------

/// Factor `n >= 1` by trial division, certifying any leftover cofactor as
/// prime only when it is small enough that compositeness is impossible.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>, FieldError> {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && d * d <= rest {
        push(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        // Either trial division ran past sqrt(rest), or every remaining prime
        // factor exceeds the trial bound and a composite cofactor would be at
        // least the bound squared; both certify primality.
        if d * d > rest || rest < COFACTOR_LIMIT {
            factors.push((rest, 1));
        } else {
            return Err(FieldError::FactorizationIncomplete { n, cofactor: rest });
        }
    }
    Ok(factors)
}

/// Write `n = t^2 * s` with `s` squarefree; returns `(s, t)`.
pub fn squarefree_split(n: u64) -> Result<(u64, u64), FieldError> {
    let mut s = 1u64;
    let mut t = 1u64;
    for (p, e) in factorize(n)? {
        if e % 2 == 1 {
            s *= p;
        }
        t *= p.pow(e / 2);
    }
    Ok((s, t))
}

// --- radical bases and field elements --------------------------------------

/// An ordered list of pairwise-coprime squarefree radicands, plus an
/// optional imaginary unit. Subset masks index the multiplication table:
/// bit 0 is `i` when present, later bits follow the radicand order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalBasis {
    include_i: bool,
    radicands: Vec<u64>,
}

impl RadicalBasis {
    pub fn new(include_i: bool, radicands: &[u64]) -> Result<Self, FieldError> {
        let mut sorted = radicands.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &m in &sorted {
            if m < 2 {
                return Err(FieldError::RadicandTooSmall(m));
            }
            let (s, _) = squarefree_split(m)?;
            if s != m {
                return Err(FieldError::NotSquarefree(m));
            }
        }
        for (idx, &a) in sorted.iter().enumerate() {
            for &b in &sorted[idx + 1..] {
                let g = a.gcd(&b);
                if g != 1 {
                    return Err(FieldError::NotCoprime(a, b, g));
                }
            }
        }
        let dim = 1usize << (sorted.len() + include_i as usize);
        if dim > MAX_DIMENSION {
            return Err(FieldError::DimensionTooLarge(dim));
        }
        Ok(RadicalBasis {
            include_i,
            radicands: sorted,
        })
    }

    pub fn dimension(&self) -> usize {
        1 << (self.radicands.len() + self.include_i as usize)
    }

    pub fn include_i(&self) -> bool {
        self.include_i
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands
    }

    fn i_mask(&self) -> usize {
        if self.include_i {
            1
        } else {
            0
        }
    }

    fn radicand_mask(&self, m: u64) -> Option<usize> {
        let offset = self.include_i as usize;
        self.radicands
            .iter()
            .position(|&r| r == m)
            .map(|j| 1 << (j + offset))
    }

    /// Product of two basis masks: the common radicands square to integers
    /// and a shared `i` contributes the sign flip.
    fn mask_product(&self, a: usize, b: usize) -> (usize, Rational) {
        let offset = self.include_i as usize;
        let mut factor = Rational::one();
        for (j, &m) in self.radicands.iter().enumerate() {
            let bit = 1 << (j + offset);
            if a & bit != 0 && b & bit != 0 {
                factor = factor * Rational::from_int(m as i64);
            }
        }
        if self.include_i && a & 1 != 0 && b & 1 != 0 {
            factor = -factor;
        }
        (a ^ b, factor)
    }
}

/// An element of the field spanned by a [`RadicalBasis`]: one rational
/// coefficient per subset mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    basis: RadicalBasis,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    pub fn zero(basis: &RadicalBasis) -> Self {
        FieldElement {
            basis: basis.clone(),
            coeffs: vec![Rational::zero(); basis.dimension()],
        }
    }

    pub fn one(basis: &RadicalBasis) -> Self {
        Self::from_rational(basis, Rational::one())
    }

    pub fn from_rational(basis: &RadicalBasis, value: Rational) -> Self {
        let mut e = Self::zero(basis);
        e.coeffs[0] = value;
        e
    }

    /// Build an element from sparse (mask, coefficient) pairs.
    pub fn from_coeffs(basis: &RadicalBasis, entries: &[(usize, Rational)]) -> Self {
        let mut e = Self::zero(basis);
        for (mask, c) in entries {
            assert!(*mask < basis.dimension(), "mask out of range");
            e.coeffs[*mask] = e.coeffs[*mask].clone() + c.clone();
        }
        e
    }

    pub fn basis(&self) -> &RadicalBasis {
        &self.basis
    }

    pub fn coefficient(&self, mask: usize) -> &Rational {
        &self.coeffs[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The purely rational part, if the element has no radical component.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn assert_same_basis(&self, other: &Self) {
        assert_eq!(
            self.basis, other.basis,
            "field elements live in different bases"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_basis(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_basis(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        FieldElement {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_basis(other);
        let dim = self.basis.dimension();
        let mut coeffs = vec![Rational::zero(); dim];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let (mask, factor) = self.basis.mask_product(a, b);
                coeffs[mask] = &coeffs[mask] + &(&(ca * cb) * &factor);
            }
        }
        FieldElement {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse, by solving the linear system `self * y = 1`
    /// over the rationals.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dim = self.basis.dimension();
        // Column b of the matrix is self * e_b expressed in coordinates.
        let mut m = vec![vec![Rational::zero(); dim]; dim];
        for b in 0..dim {
            for (a, ca) in self.coeffs.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let (mask, factor) = self.basis.mask_product(a, b);
                m[mask][b] = &m[mask][b] + &(ca * &factor);
            }
        }
        let mut rhs = vec![Rational::zero(); dim];
        rhs[0] = Rational::one();
        let solution = solve_rational(&mut m, &mut rhs)
            .expect("multiplication by a nonzero field element is invertible");
        Ok(FieldElement {
            basis: self.basis.clone(),
            coeffs: solution,
        })
    }

    /// Complex conjugation: negate every coefficient whose basis mask
    /// carries the imaginary unit. Identity on wholly real bases.
    pub fn conjugate(&self) -> Self {
        let i = self.basis.i_mask();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                if i != 0 && mask & i != 0 {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .collect();
        FieldElement {
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.basis);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Does the element lie in the subfield spanned by the listed radicands
    /// (and `i` if requested)? The sub-basis must sit inside this element's.
    pub fn in_subfield(&self, include_i: bool, radicands: &[u64]) -> Result<bool, FieldError> {
        if include_i && !self.basis.include_i {
            return Ok(false);
        }
        let mut allowed = if include_i { self.basis.i_mask() } else { 0 };
        for &m in radicands {
            match self.basis.radicand_mask(m) {
                Some(bit) => allowed |= bit,
                // A radicand outside the ambient basis spans coordinates the
                // element cannot touch, so it does not enlarge the test.
                None => continue,
            }
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(mask, c)| c.is_zero() || mask & !allowed == 0))
    }

    /// Certified complex embedding `(re, im)`, each interval of width at
    /// most `2^-bits`.
    pub fn embed(&self, bits: u32) -> Result<(DyadicInterval, DyadicInterval), FieldError> {
        let target = Rational::pow2(-(bits as i64));
        let mut working = bits + 16;
        loop {
            let grid = -(working as i64);
            let mut re = DyadicInterval::zero();
            let mut im = DyadicInterval::zero();
            for (mask, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let offset = self.basis.include_i as usize;
                let mut radical = DyadicInterval::point(crate::dyadic::Dyadic::from_int(1));
                for (j, &m) in self.basis.radicands.iter().enumerate() {
                    if mask & (1 << (j + offset)) != 0 {
                        let root =
                            enclosure::sqrt_enclosure(&Rational::from_int(m as i64), working)?;
                        radical = radical.mul(&root).outward_round(grid);
                    }
                }
                let term = radical.scale_rational(c, grid);
                if self.basis.include_i && mask & 1 != 0 {
                    im = im.add(&term);
                } else {
                    re = re.add(&term);
                }
            }
            if re.width() <= target && im.width() <= target {
                return Ok((re, im));
            }
            working = working.saturating_mul(2);
        }
    }
}

/// Gaussian elimination with exact rational pivots; consumes its inputs.
fn solve_rational(m: &mut [Vec<Rational>], rhs: &mut [Rational]) -> Option<Vec<Rational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip().expect("pivot is nonzero");
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let scale = &m[r][col] * &inv;
            for c in col..n {
                let delta = &m[col][c] * &scale;
                m[r][c] = &m[r][c] - &delta;
            }
            let delta = &rhs[col] * &scale;
            rhs[r] = &rhs[r] - &delta;
        }
    }
    Some(
        (0..n)
            .map(|r| {
                let inv = m[r][r].recip().expect("pivot is nonzero");
                &rhs[r] * &inv
            })
            .collect(),
    )
}

// --- Mersenne-number generators ---------------------------------------------

/// `2^p - 1` as a big integer.
pub fn mersenne(p: u32) -> BigInt {
    (BigInt::one() << p) - BigInt::one()
}

/// gcd of two Mersenne numbers, cross-checked against the exponent identity
/// `gcd(2^a - 1, 2^b - 1) = 2^gcd(a, b) - 1`.
pub fn mersenne_gcd(a: u32, b: u32) -> BigInt {
    let g = mersenne(a).gcd(&mersenne(b));
    debug_assert_eq!(g, mersenne(a.gcd(&b)));
    g
}

pub fn mersenne_coprime(a: u32, b: u32) -> bool {
    mersenne_gcd(a, b).is_one()
}

/// The squarefree radicand `s` and square root scale `t` of `2^p - 1`,
/// so that `sqrt(2^p - 1) = t sqrt(s)`.
pub fn mersenne_radicand(p: u32) -> Result<(u64, u64), FieldError> {
    if !(2..=31).contains(&p) {
        return Err(FieldError::ExponentOutOfRange(p));
    }
    squarefree_split((1u64 << p) - 1)
}

/// The smallest basis containing `gamma_p`.
pub fn gamma_basis(p: u32) -> Result<RadicalBasis, FieldError> {
    let (s, _) = mersenne_radicand(p)?;
    RadicalBasis::new(true, &[s])
}

/// The unit-modulus generator
/// `gamma_p = (2^(p-1) - 1)/2^(p-1) + i sqrt(2^p - 1)/2^(p-1)`,
/// expressed in any basis that contains `i` and the radicand of `2^p - 1`.
pub fn gamma_in(p: u32, basis: &RadicalBasis) -> Result<FieldElement, FieldError> {
    let (s, t) = mersenne_radicand(p)?;
    let bit = basis
        .radicand_mask(s)
        .unwrap_or_else(|| panic!("basis does not contain radicand {s}"));
    assert!(basis.include_i, "gamma needs the imaginary unit");
    let half_pow = Rational::pow2(-((p as i64) - 1));
    let real = Rational::one() - half_pow.clone();
    let imag = Rational::from_int(t as i64) * half_pow;
    Ok(FieldElement::from_coeffs(
        basis,
        &[(0, real), (basis.i_mask() | bit, imag)],
    ))
}

pub fn gamma(p: u32) -> Result<FieldElement, FieldError> {
    let basis = gamma_basis(p)?;
    gamma_in(p, &basis)
}

/// The cosine of the angle of `gamma_p`: `1 - 2^(1-p)`.
pub fn gamma_cosine(p: u32) -> Rational {
    Rational::one() - Rational::pow2(1 - p as i64)
}

// --- power expansions --------------------------------------------------------

/// `gamma_p^n` written as `q1 + q2 * i sqrt(s)`, computed two independent
/// ways (repeated field multiplication, and the binomial expansion split into
/// even and odd terms) which must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerExpansion {
    pub q1: Rational,
    pub q2: Rational,
}

impl PowerExpansion {
    /// The imaginary part vanishes exactly when `q2 = 0`; a nonzero value
    /// certifies that `gamma_p^n` is irrational.
    pub fn imaginary_part_nonzero(&self) -> bool {
        !self.q2.is_zero()
    }
}

pub fn power_expansion_check(p: u32, n: u32) -> Result<PowerExpansion, FieldError> {
    let basis = gamma_basis(p)?;
    let g = gamma_in(p, &basis)?;
    let iterated = g.pow(n);

    let (s, t) = mersenne_radicand(p)?;
    let u = Rational::one() - Rational::pow2(-((p as i64) - 1));
    let w = Rational::from_int(t as i64) * Rational::pow2(-((p as i64) - 1));
    let mut q1 = Rational::zero();
    let mut q2 = Rational::zero();
    for j in 0..=n {
        let c = Rational::from(num_integer::binomial(BigInt::from(n), BigInt::from(j)));
        let term = c * rat_pow(&u, n - j) * rat_pow(&w, j) * rat_pow(&Rational::from_int(s as i64), j / 2);
        let sign = if (j / 2) % 2 == 0 { term } else { -term };
        if j % 2 == 0 {
            q1 = q1 + sign;
        } else {
            q2 = q2 + sign;
        }
    }

    let radical_mask = basis.i_mask() | basis.radicand_mask(s).expect("own radicand");
    let binomial = FieldElement::from_coeffs(&basis, &[(0, q1.clone()), (radical_mask, q2.clone())]);
    assert_eq!(
        iterated, binomial,
        "iterated product and binomial expansion disagree for p = {p}, n = {n}"
    );
    Ok(PowerExpansion { q1, q2 })
}

fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

// --- relation searches --------------------------------------------------------

/// Outcome of the certified numeric search over angle combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationVerdict {
    /// Every candidate interval excluded zero; `margin` is the smallest
    /// certified distance from zero over the whole grid.
    NoRelationFound { margin: Rational },
    /// Exactly confirmed relations; each tuple lists the coefficient of pi
    /// first, then one exponent per generator.
    RelationsFound { relations: Vec<Vec<i64>> },
    /// Some interval straddled zero but the exact cross-check failed, so
    /// neither verdict is certified at this precision.
    InsufficientPrecision,
}

/// Exhaustive exact search for multiplicative relations
/// `prod_j gamma_(p_j)^(n_j) = 1` with `|n_j| <= bound`, excluding the
/// all-zero tuple. Returns every solution in lexicographic order. The work
/// is split across `threads` by leading exponent, which keeps the output
/// identical for every thread count.
pub fn relation_search_exact(
    primes: &[u32],
    bound: u32,
    threads: usize,
) -> Result<Vec<Vec<i64>>, FieldError> {
    if primes.is_empty() {
        return Err(FieldError::EmptyGenerators);
    }
    let threads = threads.max(1);
    let k = primes.len();
    let radix = 2 * bound as u64 + 1;
    let total = radix.checked_pow(k as u32).unwrap_or(u64::MAX);
    let work = (k as u64).saturating_mul(total);
    if work > SEARCH_LIMIT {
        return Err(FieldError::SearchSpaceTooLarge(work));
    }

    let mut radicands = Vec::new();
    for &p in primes {
        radicands.push(mersenne_radicand(p)?.0);
    }
    let basis = RadicalBasis::new(true, &radicands)?;

    // Power tables: powers[j][e + bound] = gamma_(p_j)^e, negatives via
    // conjugation since the generators have unit modulus.
    let mut powers: Vec<Vec<FieldElement>> = Vec::with_capacity(k);
    for &p in primes {
        let g = gamma_in(p, &basis)?;
        let mut table = vec![FieldElement::one(&basis); radix as usize];
        for e in 1..=bound {
            let pos = table[(bound + e - 1) as usize].mul(&g);
            table[(bound + e) as usize] = pos.clone();
            table[(bound - e) as usize] = pos.conjugate();
        }
        powers.push(table);
    }

    // Depth-first over exponent digits; a chunk is a contiguous range of
    // leading exponents, so concatenating chunk outputs preserves lex order.
    fn descend(
        powers: &[Vec<FieldElement>],
        bound: i64,
        digits: &mut Vec<i64>,
        partial: FieldElement,
        one: &FieldElement,
        out: &mut Vec<Vec<i64>>,
    ) {
        let depth = digits.len();
        if depth == powers.len() {
            if digits.iter().any(|&d| d != 0) && partial == *one {
                out.push(digits.clone());
            }
            return;
        }
        for e in -bound..=bound {
            digits.push(e);
            let next = partial.mul(&powers[depth][(e + bound) as usize]);
            descend(powers, bound, digits, next, one, out);
            digits.pop();
        }
    }

    let one = FieldElement::one(&basis);
    let bound_i = bound as i64;
    let leading: Vec<i64> = (-bound_i..=bound_i).collect();
    let chunk_size = leading.len().div_ceil(threads);
    let mut results = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in leading.chunks(chunk_size) {
            let powers = &powers;
            let one = &one;
            handles.push(scope.spawn(move || {
                let mut out = Vec::new();
                for &e0 in chunk {
                    let mut digits = vec![e0];
                    let partial = powers[0][(e0 + bound_i) as usize].clone();
                    descend(powers, bound_i, &mut digits, partial, one, &mut out);
                }
                out
            }));
        }
        for handle in handles {
            results.extend(handle.join().expect("search worker panicked"));
        }
    });
    Ok(results)
}

/// Certified numeric search for integer relations
/// `n_0 pi + sum_j n_j theta_(p_j) = 0`, `theta_p = arccos(1 - 2^(1-p))`,
/// over `|n_i| <= bound` excluding the all-zero tuple.
///
/// Intervals that exclude zero rule their tuple out with a concrete margin.
/// An interval that straddles zero is resolved exactly: since
/// `e^(i theta_p) = gamma_p`, the relation holds precisely when
/// `prod gamma^(n_j) = (-1)^(n_0)` in the field — and the straddling
/// interval, being far narrower than a full turn, pins the angle sum to the
/// single candidate multiple of `2 pi`, namely zero. A failed cross-check
/// means the grid point is merely unresolved at this precision.
pub fn relation_search_numeric(
    primes: &[u32],
    bound: u32,
    bits: u32,
) -> Result<RelationVerdict, FieldError> {
    if primes.is_empty() {
        return Err(FieldError::EmptyGenerators);
    }
    if bits < 128 {
        return Err(FieldError::PrecisionTooLow(bits));
    }
    let k = primes.len();
    let radix = 2 * bound as u64 + 1;
    let total = radix.checked_pow(k as u32 + 1).unwrap_or(u64::MAX);
    let work = (k as u64 + 1).saturating_mul(total);
    if work > SEARCH_LIMIT {
        return Err(FieldError::SearchSpaceTooLarge(work));
    }

    let working = bits + 16;
    let grid = -(working as i64);
    let pi = enclosure::pi_enclosure(working);
    let mut angles = vec![pi.clone()];
    for &p in primes {
        let c = gamma_cosine(p);
        angles.push(enclosure::arccos_enclosure(&c, working)?);
    }
    // scaled[d][e + bound] encloses e * angle_d.
    let bound_i = bound as i64;
    let scaled: Vec<Vec<DyadicInterval>> = angles
        .iter()
        .map(|a| {
            (-bound_i..=bound_i)
                .map(|e| a.scale_int(e).outward_round(grid))
                .collect()
        })
        .collect();

    let mut radicands = Vec::new();
    for &p in primes {
        radicands.push(mersenne_radicand(p)?.0);
    }
    let basis = RadicalBasis::new(true, &radicands)?;
    let gammas: Vec<FieldElement> = primes
        .iter()
        .map(|&p| gamma_in(p, &basis))
        .collect::<Result<_, _>>()?;

    let mut margin: Option<Rational> = None;
    let mut relations = Vec::new();
    let mut unresolved = false;
    let mut digits = vec![-bound_i; k + 1];
    'tuples: loop {
        if digits.iter().any(|&d| d != 0) {
            let mut sum = DyadicInterval::zero();
            for (d, &e) in digits.iter().enumerate() {
                sum = sum.add(&scaled[d][(e + bound_i) as usize]);
            }
            let lo = sum.lo().to_rational();
            let hi = sum.hi().to_rational();
            if lo.is_positive() || hi.is_negative() {
                let distance = if lo.is_positive() { lo } else { -hi };
                if margin.as_ref().map_or(true, |m| distance < *m) {
                    margin = Some(distance);
                }
            } else {
                // Zero straddled: settle exactly. The interval is far
                // narrower than a full turn, so an exact identity pins the
                // angle sum to zero itself.
                assert!(sum.width() < Rational::from_int(6), "interval too wide to pin");
                let mut product = FieldElement::one(&basis);
                for (j, &e) in digits[1..].iter().enumerate() {
                    let p = if e >= 0 {
                        gammas[j].pow(e as u32)
                    } else {
                        gammas[j].conjugate().pow((-e) as u32)
                    };
                    product = product.mul(&p);
                }
                let expected = if digits[0].rem_euclid(2) == 0 {
                    FieldElement::one(&basis)
                } else {
                    FieldElement::one(&basis).neg()
                };
                if product == expected {
                    relations.push(digits.clone());
                } else {
                    unresolved = true;
                }
            }
        }
        // Odometer over [-bound, bound]^(k+1), last digit fastest, so the
        // collected relations come out in lexicographic order.
        for d in (0..=k).rev() {
            if digits[d] < bound_i {
                digits[d] += 1;
                continue 'tuples;
            }
            digits[d] = -bound_i;
            if d == 0 {
                break 'tuples;
            }
        }
    }

    if !relations.is_empty() {
        Ok(RelationVerdict::RelationsFound { relations })
    } else if unresolved {
        Ok(RelationVerdict::InsufficientPrecision)
    } else {
        Ok(RelationVerdict::NoRelationFound {
            margin: margin.expect("grid contains a nonzero tuple"),
        })
    }
}

// --- rationality filter --------------------------------------------------------

/// Does `arccos(c) / pi` come out rational? By Niven's theorem the only
/// rational cosines with that property are `0`, `±1/2`, and `±1`.
pub fn niven_filter(c: &Rational) -> Result<bool, FieldError> {
    if c.abs() > Rational::one() {
        return Err(FieldError::CosineDomain(c.clone()));
    }
    let half = Rational::ratio(1, 2);
    Ok(c.is_zero() || c.abs() == half || c.abs() == Rational::one())
}

/// Map each `n` to whether `alpha(n)`, equivalently `arccos(1 - 2^(-n-1))/pi`,
/// is rational. Positive `n` always fails the filter; `n = 0` passes via the
/// cosine value `1/2`.
pub fn alpha_rationality_sweep(max_n: u32) -> BTreeMap<u32, bool> {
    (0..=max_n)
        .map(|n| {
            let c = Rational::one() - Rational::pow2(-(n as i64) - 1);
            (n, niven_filter(&c).expect("cosine values lie in (0, 1)"))
        })
        .collect()
}
