//! One-sided approximation streams for real numbers.
//!
//! An [`UpperBoundStream`] emits rational upper bounds whose infimum is the
//! represented value; a [`LowerBoundStream`] is the mirror image. Neither
//! side promises monotone emissions, only a correct envelope, so consumers
//! work with the running best bound. A single `advance` may also stall
//! (`Ok(None)`): the producer did bookkeeping but has nothing sound to emit
//! yet. Stalling is not an error; semi-decision callers simply budget their
//! interrogation.

use num_traits::ToPrimitive;

use crate::rational::Rational;
use crate::re_set::{Enumerator, ReSet};
use crate::urm::Natural;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StreamError {
    #[error("producer violated its contract: emitted negative bound {0}")]
    NegativeBound(Rational),
}

type ProducerFn = Box<dyn FnMut() -> Result<Option<Rational>, StreamError> + Send>;

/// Outcome of a budgeted comparison attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Some emitted upper bound fell strictly below the threshold.
    ConfirmedBelow,
    /// The budget ran out first. Says nothing about the true value.
    Unknown,
}

macro_rules! bound_stream {
    ($name:ident, $keep:ident, $doc:literal) => {
        #[doc = $doc]
        pub struct $name {
            producer: ProducerFn,
            best: Option<Rational>,
            emitted: u64,
        }

        impl $name {
            pub fn new(
                producer: impl FnMut() -> Result<Option<Rational>, StreamError> + Send + 'static,
            ) -> Self {
                $name {
                    producer: Box::new(producer),
                    best: None,
                    emitted: 0,
                }
            }

            /// Stream that repeats one exact bound forever.
            pub fn constant(value: Rational) -> Self {
                $name::new(move || Ok(Some(value.clone())))
            }

            /// Stream reading bounds off an iterator; stalls forever once the
            /// iterator is exhausted.
            pub fn from_iter<I>(iter: I) -> Self
            where
                I: IntoIterator<Item = Rational>,
                I::IntoIter: Send + 'static,
            {
                let mut it = iter.into_iter();
                $name::new(move || Ok(it.next()))
            }

            /// One producer step. `Ok(Some(bound))` is an emission, `Ok(None)`
            /// a stall.
            pub fn advance(&mut self) -> Result<Option<Rational>, StreamError> {
                let step = (self.producer)()?;
                if let Some(bound) = &step {
                    self.emitted += 1;
                    let replace = match &self.best {
                        None => true,
                        Some(current) => $keep(bound, current),
                    };
                    if replace {
                        self.best = Some(bound.clone());
                    }
                }
                Ok(step)
            }

            /// Advance until an emission arrives or `max_steps` advances have
            /// been spent. Returns the emission, if any.
            pub fn next_bound_within(
                &mut self,
                max_steps: u64,
            ) -> Result<Option<Rational>, StreamError> {
                for _ in 0..max_steps {
                    if let Some(bound) = self.advance()? {
                        return Ok(Some(bound));
                    }
                }
                Ok(None)
            }

            /// Best (tightest) bound emitted so far.
            pub fn best(&self) -> Option<&Rational> {
                self.best.as_ref()
            }

            pub fn emissions(&self) -> u64 {
                self.emitted
            }
        }
    };
}

fn keep_min(candidate: &Rational, current: &Rational) -> bool {
    candidate < current
}

fn keep_max(candidate: &Rational, current: &Rational) -> bool {
    candidate > current
}

bound_stream!(
    UpperBoundStream,
    keep_min,
    "Emits rational upper bounds of a real; their infimum is the value."
);
bound_stream!(
    LowerBoundStream,
    keep_max,
    "Emits rational lower bounds of a real; their supremum is the value."
);

/// A real known from both sides.
pub struct ComputableReal {
    pub upper: UpperBoundStream,
    pub lower: LowerBoundStream,
    /// Known exact value, for fixtures and display; not used by algorithms.
    pub exact: Option<Rational>,
}

impl ComputableReal {
    pub fn exact(value: Rational) -> Self {
        ComputableReal {
            upper: UpperBoundStream::constant(value.clone()),
            lower: LowerBoundStream::constant(value.clone()),
            exact: Some(value),
        }
    }

    pub fn from_parts(upper: UpperBoundStream, lower: LowerBoundStream) -> Self {
        ComputableReal {
            upper,
            lower,
            exact: None,
        }
    }
}

/// Product of two nonnegative reals given by upper bounds. The operands are
/// advanced round-robin and each emission is the product of the running
/// minima, so the emitted infimum is exactly the product of the operand
/// infima. A negative bound from either operand is a contract violation.
pub fn mul_nonneg(mut a: UpperBoundStream, mut b: UpperBoundStream) -> UpperBoundStream {
    let mut turn_a = true;
    UpperBoundStream::new(move || {
        let pulled = if turn_a { a.advance()? } else { b.advance()? };
        turn_a = !turn_a;
        if let Some(bound) = &pulled {
            if bound.is_negative() {
                return Err(StreamError::NegativeBound(bound.clone()));
            }
        }
        match (a.best(), b.best()) {
            (Some(x), Some(y)) => Ok(Some(x * y)),
            _ => Ok(None),
        }
    })
}

/// Recover upper bounds of `alpha` from upper bounds of `c * alpha` and a
/// positive computable scalar `c`, by dividing through lower bounds of `c`.
/// While every lower bound of `c` seen so far is `<= 0` the stream stalls;
/// that is not an error, the caller's interrogation budget decides when to
/// give up.
pub fn unscale(mut scaled: UpperBoundStream, c: ComputableReal) -> UpperBoundStream {
    let mut c_lower = c.lower;
    let mut turn_scaled = true;
    UpperBoundStream::new(move || {
        if turn_scaled {
            scaled.advance()?;
        } else {
            c_lower.advance()?;
        }
        turn_scaled = !turn_scaled;
        match (scaled.best(), c_lower.best()) {
            (Some(u), Some(m)) if m.is_positive() => {
                Ok(Some(u.checked_div(m).expect("positive divisor")))
            }
            _ => Ok(None),
        }
    })
}

/// Binary-weight value of a recursively enumerable set:
/// `x_A = sum over n in A of 2^-n`, indexed from `n = 0` (so the full set
/// sums to 2). Returns lower bounds of `x_A` and upper bounds of `2 - x_A`;
/// both streams advance the same deterministic enumeration schedule
/// independently.
pub fn specker(set: &ReSet) -> (LowerBoundStream, UpperBoundStream) {
    let lower = {
        let mut enumerator = Enumerator::new(set.clone());
        let mut partial = Rational::zero();
        LowerBoundStream::new(move || {
            if let Some(n) = enumerator.step() {
                partial += &weight(&n);
            }
            Ok(Some(partial.clone()))
        })
    };
    let upper = {
        let mut enumerator = Enumerator::new(set.clone());
        let mut partial = Rational::zero();
        UpperBoundStream::new(move || {
            if let Some(n) = enumerator.step() {
                partial += &weight(&n);
            }
            Ok(Some(Rational::from_int(2) - partial.clone()))
        })
    };
    (lower, upper)
}

fn weight(n: &Natural) -> Rational {
    let exp = n.to_i64().expect("set element fits in i64");
    Rational::pow2(-exp)
}

/// Upper bounds of `inf { f(m)/m }` from an enumeration of the sample set
/// `{ (m, n) : f(m) <= n }`. Each pair yields the bound `n/m`; pairs with
/// `m = 0` carry no information and are skipped with a warning.
pub fn inf_ratio(
    pairs: impl Iterator<Item = (Natural, Natural)> + Send + 'static,
) -> UpperBoundStream {
    let mut pairs = pairs;
    UpperBoundStream::new(move || match pairs.next() {
        None => Ok(None),
        Some((m, n)) => {
            if m.to_u64() == Some(0) {
                log::warn!("inf_ratio: skipping pair with m = 0");
                return Ok(None);
            }
            let num = Rational::from_int(num_bigint::BigInt::from(n));
            let den = Rational::from_int(num_bigint::BigInt::from(m));
            Ok(Some(num.checked_div(&den).expect("m > 0")))
        }
    })
}

/// Deterministic enumeration of `{ (m, n) : n >= f(m), m >= 1 }` that reaches
/// the frontier pair `(m, f(m))` at step `2m - 1`. Odd steps walk the
/// frontier; even steps fill the upward closure along the Cantor diagonal.
pub fn frontier_fill_pairs(
    f: impl Fn(u64) -> Natural + Send + 'static,
) -> impl Iterator<Item = (Natural, Natural)> + Send + 'static {
    let mut t: u64 = 0;
    std::iter::from_fn(move || {
        t += 1;
        if t % 2 == 1 {
            let m = (t + 1) / 2;
            Some((Natural::from(m), f(m)))
        } else {
            let (a, j) = crate::urm::cantor_unpair(&Natural::from(t / 2));
            let m = a.to_u64().unwrap_or(u64::MAX - 1) + 1;
            Some((Natural::from(m), f(m) + j))
        }
    })
}

/// Semi-decide `value < threshold` by interrogating upper bounds for at most
/// `budget` advances. `ConfirmedBelow` is definitive; `Unknown` is not a
/// refutation.
pub fn semi_lt(
    stream: &mut UpperBoundStream,
    threshold: &Rational,
    budget: u64,
) -> Result<Comparison, StreamError> {
    for _ in 0..budget {
        if let Some(bound) = stream.advance()? {
            if &bound < threshold {
                return Ok(Comparison::ConfirmedBelow);
            }
        }
    }
    Ok(Comparison::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Upper bounds `value * (1 + 2^-k)` strictly decreasing to `value`.
    fn shrinking_upper(value: Rational) -> UpperBoundStream {
        let mut k: i64 = 0;
        UpperBoundStream::new(move || {
            k += 1;
            Ok(Some(&value * &(Rational::one() + Rational::pow2(-k))))
        })
    }

    #[test]
    fn running_best_tracks_the_envelope() {
        let mut s = UpperBoundStream::from_iter(vec![rat("3"), rat("5"), rat("2"), rat("4")]);
        for _ in 0..4 {
            s.advance().unwrap();
        }
        assert_eq!(s.best(), Some(&rat("2")));
        assert_eq!(s.emissions(), 4);
        // Exhausted iterator stalls without forgetting the best bound.
        assert_eq!(s.advance().unwrap(), None);
        assert_eq!(s.best(), Some(&rat("2")));
    }

    #[test]
    fn constant_real_sandwiches_its_value() {
        let mut c = ComputableReal::exact(rat("2"));
        let up = c.upper.next_bound_within(1).unwrap().unwrap();
        let lo = c.lower.next_bound_within(1).unwrap().unwrap();
        assert!(lo <= rat("2") && rat("2") <= up);
        assert_eq!(c.exact, Some(rat("2")));
    }

    // --- specker ---

    #[test]
    fn specker_evens_converges_to_four_thirds() {
        let (mut lower, mut upper) = specker(&ReSet::evens());
        for _ in 0..30 {
            lower.advance().unwrap();
            upper.advance().unwrap();
        }
        // x_evens = 1 + 1/4 + 1/16 + ... = 4/3, complement bound 2 - 4/3.
        let tol = Rational::pow2(-20);
        let lo = lower.best().unwrap().clone();
        let up = upper.best().unwrap().clone();
        assert!(lo <= rat("4/3") && rat("4/3") - lo.clone() < tol, "lo = {lo}");
        assert!(up >= rat("2/3") && up.clone() - rat("2/3") < tol, "up = {up}");
    }

    #[test]
    fn specker_threes_hits_eight_sevenths() {
        let (mut lower, _) = specker(&ReSet::threes());
        for _ in 0..40 {
            lower.advance().unwrap();
        }
        let lo = lower.best().unwrap();
        assert!(lo <= &rat("8/7"));
        assert!(rat("8/7") - lo.clone() < Rational::pow2(-20));
    }

    #[test]
    fn specker_full_set_sums_to_two() {
        let (mut lower, mut upper) = specker(&ReSet::all());
        for _ in 0..25 {
            lower.advance().unwrap();
            upper.advance().unwrap();
        }
        assert!(rat("2") - lower.best().unwrap().clone() < Rational::pow2(-20));
        // 2 - x_all = 0 from above.
        assert!(upper.best().unwrap() >= &Rational::zero());
        assert!(upper.best().unwrap() < &Rational::pow2(-20));
    }

    #[test]
    fn specker_bounds_are_monotone_as_emitted() {
        let (mut lower, _) = specker(&ReSet::evens());
        let mut prev = Rational::from_int(-1);
        for _ in 0..20 {
            let b = lower.advance().unwrap().unwrap();
            assert!(b >= prev);
            prev = b;
        }
    }

    // --- mul_nonneg ---

    #[test]
    fn product_of_shrinking_streams_converges_to_product() {
        // 8/7 * 7/8 = 1.
        let product = mul_nonneg(shrinking_upper(rat("8/7")), UpperBoundStream::constant(rat("7/8")));
        let mut product = product;
        let mut last = None;
        for _ in 0..120 {
            if let Some(b) = product.advance().unwrap() {
                assert!(b >= rat("1"), "upper bound {b} dipped below the true product");
                last = Some(b);
            }
        }
        let last = last.unwrap();
        assert!(last.clone() - rat("1") < Rational::pow2(-20), "last = {last}");
    }

    #[test]
    fn negative_emission_is_a_contract_violation() {
        let bad = UpperBoundStream::from_iter(vec![rat("-1")]);
        let mut product = mul_nonneg(bad, UpperBoundStream::constant(rat("1")));
        assert_eq!(
            product.advance().unwrap_err(),
            StreamError::NegativeBound(rat("-1"))
        );
    }

    // --- unscale ---

    #[test]
    fn unscale_recovers_alpha_from_scaled_stream() {
        // c * alpha with c = 2, alpha = 3/4: upper bounds of 3/2.
        let scaled = shrinking_upper(rat("3/2"));
        let mut alpha = unscale(scaled, ComputableReal::exact(rat("2")));
        let mut best = None;
        for _ in 0..100 {
            if let Some(b) = alpha.advance().unwrap() {
                assert!(b >= rat("3/4"));
                best = Some(b);
            }
        }
        assert!(best.unwrap() - rat("3/4") < Rational::pow2(-20));
    }

    #[test]
    fn unscale_stalls_while_scalar_lower_bounds_are_nonpositive() {
        let scaled = UpperBoundStream::constant(rat("1"));
        let zero = ComputableReal::exact(rat("0"));
        let mut stream = unscale(scaled, zero);
        for _ in 0..50 {
            assert_eq!(stream.advance().unwrap(), None);
        }
    }

    #[test]
    fn unscale_starts_emitting_once_scalar_goes_positive() {
        // Lower bounds of c = 3 that start pessimistically at -1.
        let mut step = 0u64;
        let lower = LowerBoundStream::new(move || {
            step += 1;
            Ok(Some(if step <= 3 { rat("-1") } else { rat("3") }))
        });
        let c = ComputableReal::from_parts(UpperBoundStream::constant(rat("3")), lower);
        let mut stream = unscale(UpperBoundStream::constant(rat("6")), c);
        let bound = stream.next_bound_within(64).unwrap().unwrap();
        assert_eq!(bound, rat("2"));
    }

    // --- inf_ratio ---

    #[test]
    fn inf_ratio_reaches_the_infimum_frontier() {
        // f(m) = m + 1: inf f(m)/m = 1, approached as (m+1)/m.
        let mut stream = inf_ratio(frontier_fill_pairs(|m| Natural::from(m + 1)));
        for _ in 0..(1 << 11) {
            stream.advance().unwrap();
        }
        let best = stream.best().unwrap();
        assert!(best > &rat("1"));
        assert!(best <= &(rat("1") + Rational::pow2(-10)), "best = {best}");
    }

    #[test]
    fn inf_ratio_skips_zero_denominators() {
        let pairs = vec![
            (Natural::from(0u32), Natural::from(5u32)),
            (Natural::from(2u32), Natural::from(3u32)),
        ];
        let mut stream = inf_ratio(pairs.into_iter());
        assert_eq!(stream.advance().unwrap(), None);
        assert_eq!(stream.advance().unwrap(), Some(rat("3/2")));
    }

    #[test]
    fn frontier_fill_covers_the_upward_closure() {
        let mut seen = std::collections::HashSet::new();
        for (m, n) in frontier_fill_pairs(|m| Natural::from(m + 1)).take(4000) {
            let m = m.to_u64().unwrap();
            let n = n.to_u64().unwrap();
            assert!(n >= m + 1, "({m}, {n}) below the graph");
            seen.insert((m, n));
        }
        // Spot-check closure pairs strictly above the frontier.
        assert!(seen.contains(&(1, 2)));
        assert!(seen.contains(&(1, 3)));
        assert!(seen.contains(&(2, 4)));
    }

    // --- semi_lt ---

    #[test]
    fn semi_lt_confirms_strict_upper_separation() {
        let mut s = shrinking_upper(rat("5/8"));
        assert_eq!(
            semi_lt(&mut s, &rat("2/3"), 64).unwrap(),
            Comparison::ConfirmedBelow
        );
    }

    #[test]
    fn semi_lt_cannot_confirm_equality_or_below() {
        // Bounds never drop below 5/8, so value < 5/8 stays unknown.
        let mut s = shrinking_upper(rat("5/8"));
        assert_eq!(semi_lt(&mut s, &rat("5/8"), 256).unwrap(), Comparison::Unknown);
        let mut s2 = shrinking_upper(rat("5/8"));
        assert_eq!(semi_lt(&mut s2, &rat("1/2"), 256).unwrap(), Comparison::Unknown);
    }

    #[test]
    fn semi_lt_zero_budget_is_unknown() {
        let mut s = shrinking_upper(rat("1"));
        assert_eq!(semi_lt(&mut s, &rat("100"), 0).unwrap(), Comparison::Unknown);
    }
}
