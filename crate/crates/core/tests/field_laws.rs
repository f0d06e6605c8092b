//! Algebraic laws for the multiquadratic field arithmetic, plus consistency
//! between exact products and their numeric embeddings. The property tests
//! run in the sixteen-dimensional basis Q(i, sqrt 2, sqrt 3, sqrt 5).

use l1vol::fields::{gamma, mersenne_radicand, FieldElement, RadicalBasis};
use l1vol::{DyadicInterval, Rational};

use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis() -> RadicalBasis {
    RadicalBasis::new(true, &[2, 3, 5]).expect("squarefree radicands")
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn element() -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec((0usize..16, small_rational()), 0..=4)
        .prop_map(|entries| FieldElement::from_coeffs(&basis(), &entries))
}

proptest! {
    // --- ring axioms ---

    #[test]
    fn addition_commutes(a in element(), b in element()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn addition_associates(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn negation_cancels(a in element()) {
        prop_assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn multiplication_commutes(a in element(), b in element()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn multiplication_associates(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn multiplication_distributes(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    // --- field structure ---

    #[test]
    fn nonzero_elements_invert(a in element()) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().expect("nonzero element of a field");
        prop_assert_eq!(a.mul(&inv), FieldElement::one(a.basis()));
    }

    // --- complex conjugation is a ring involution ---

    #[test]
    fn conjugation_is_multiplicative(a in element(), b in element()) {
        prop_assert_eq!(a.mul(&b).conjugate(), a.conjugate().mul(&b.conjugate()));
    }

    #[test]
    fn conjugation_is_an_involution(a in element()) {
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }
}

// --- embeddings ---

/// Product of two closed rational intervals.
fn range_mul(
    a: &(Rational, Rational),
    b: &(Rational, Rational),
) -> (Rational, Rational) {
    let corners = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = corners.iter().min().unwrap().clone();
    let hi = corners.iter().max().unwrap().clone();
    (lo, hi)
}

fn ranges_intersect(a: &(Rational, Rational), b: &(Rational, Rational)) -> bool {
    a.0 <= b.1 && b.0 <= a.1
}

fn parts(embedding: (DyadicInterval, DyadicInterval)) -> ((Rational, Rational), (Rational, Rational)) {
    (embedding.0.to_rationals(), embedding.1.to_rationals())
}

#[test]
fn embeddings_respect_exact_products() {
    let basis = basis();
    let mut rng = ChaCha8Rng::seed_from_u64(0xf1e1d);
    for _ in 0..12 {
        let mut sample = || {
            let entries: Vec<(usize, Rational)> = (0..3)
                .map(|_| {
                    (
                        rng.gen_range(0usize..16),
                        Rational::ratio(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=3)),
                    )
                })
                .collect();
            FieldElement::from_coeffs(&basis, &entries)
        };
        let a = sample();
        let b = sample();
        let (a_re, a_im) = parts(a.embed(200).unwrap());
        let (b_re, b_im) = parts(b.embed(200).unwrap());
        let (p_re, p_im) = parts(a.mul(&b).embed(200).unwrap());

        // (a_re + i a_im)(b_re + i b_im) via rational interval arithmetic.
        let rr = range_mul(&a_re, &b_re);
        let ii = range_mul(&a_im, &b_im);
        let ri = range_mul(&a_re, &b_im);
        let ir = range_mul(&a_im, &b_re);
        let real = (&rr.0 - &ii.1, &rr.1 - &ii.0);
        let imag = (&ri.0 + &ir.0, &ri.1 + &ir.1);

        assert!(
            ranges_intersect(&p_re, &real),
            "real parts disagree: {p_re:?} vs {real:?}"
        );
        assert!(
            ranges_intersect(&p_im, &imag),
            "imaginary parts disagree: {p_im:?} vs {imag:?}"
        );
    }
}

// --- the gamma family ---

#[test]
fn gamma_times_its_conjugate_is_one() {
    for p in [2u32, 3, 5, 7, 11, 13] {
        let g = gamma(p).expect("admissible exponent");
        assert_eq!(
            g.mul(&g.conjugate()),
            FieldElement::one(g.basis()),
            "gamma at p = {p} is not on the unit circle"
        );
    }
}

#[test]
fn gamma_needs_both_i_and_its_own_radicand() {
    for p in [3u32, 5, 7, 11, 13] {
        let (s, _) = mersenne_radicand(p).expect("admissible exponent");
        let g = gamma(p).expect("admissible exponent");
        assert!(g.in_subfield(true, &[s]).unwrap(), "p = {p}");
        assert!(!g.in_subfield(true, &[]).unwrap(), "p = {p}: radicand is necessary");
        assert!(!g.in_subfield(false, &[s]).unwrap(), "p = {p}: i is necessary");
    }
}

#[test]
fn mersenne_numbers_at_prime_exponents_are_squarefree() {
    // 2^p - 1 for p = 2, 3, 5, 7, 13 is prime; 2^11 - 1 = 23 * 89. All are
    // squarefree, so the square-root scale t is 1 and the radicand is the
    // Mersenne number itself.
    for p in [2u32, 3, 5, 7, 11, 13] {
        let (s, t) = mersenne_radicand(p).expect("admissible exponent");
        assert_eq!(t, 1, "2^{p} - 1 should be squarefree");
        assert_eq!(u128::from(s), (1u128 << p) - 1);
    }
    // Control at a composite exponent: 2^6 - 1 = 63 = 3^2 * 7.
    assert_eq!(mersenne_radicand(6).unwrap(), (7, 3));
}
