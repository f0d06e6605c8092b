//! Cross-module checks on the certification pipeline: witnesses found by the
//! search glue together and re-verify, non-orientable targets are rejected on
//! every entry point, and the anytime stream keeps descending when given a
//! longer schedule than the acceptance gate exercises.

use l1vol::simplicial::fixtures::{klein_nine, triangle};
use l1vol::simplicial::{
    semi_decide, verify_witness, CombinatorialSimplex, ManifoldError, SearchError, SearchOutcome,
    SimvolStream, Witness, WitnessRejection, WitnessTerm,
};
use l1vol::Rational;

fn certified(target: &l1vol::simplicial::SimplicialComplex, n: u64, r_max: usize) -> Witness {
    match semi_decide(target, 1, n, r_max, 0, 1) {
        Ok(SearchOutcome::Certified(w)) => w,
        other => panic!("expected a certificate at n = {n}, r_max = {r_max}: {other:?}"),
    }
}

// --- gluing witnesses ---

#[test]
fn concatenated_witnesses_verify_with_added_budgets() {
    let circle = triangle();
    // Two independently certified representatives of the fundamental class:
    // a single doubly-subdivided loop, and a two-term once-subdivided cycle.
    let deep_wrap = certified(&circle, 1, 2);
    let shallow_pair = certified(&circle, 2, 1);
    assert_eq!(deep_wrap.norm(), 1);
    assert_eq!(shallow_pair.norm(), 2);

    // Their sum represents twice the class with the budgets added, even
    // though the two chains live at different subdivision depths.
    let glued = deep_wrap.concat(&shallow_pair);
    assert_eq!(glued.m, 2);
    assert_eq!(glued.n, 3);
    let certs = verify_witness(&circle, &glued).expect("glued witness verifies");
    // Both chains land in the undivided target, so the class comparison
    // happens at depth zero even though the domains are subdivided.
    assert_eq!(certs.comparison_depth, 0);
}

#[test]
fn doubling_a_witness_merges_shared_terms() {
    let circle = triangle();
    let wrap = certified(&circle, 1, 2);
    let doubled = wrap.concat(&wrap);
    assert_eq!(doubled.m, 2);
    // The shared simplex merges into one term with coefficient two, so the
    // norm doubles while the chain stays one term long.
    assert_eq!(doubled.chain.len(), wrap.chain.len());
    assert_eq!(doubled.norm(), 2 * wrap.norm());
    verify_witness(&circle, &doubled).expect("doubled witness verifies");
}

// --- non-orientable targets ---

#[test]
fn non_orientable_targets_are_rejected_on_every_entry_point() {
    let klein = klein_nine();

    match semi_decide(&klein, 1, 1, 0, 0, 1) {
        Err(SearchError::Target(ManifoldError::NotOrientable)) => {}
        other => panic!("search accepted a non-orientable target: {other:?}"),
    }

    match SimvolStream::new(&klein, 1) {
        Err(ManifoldError::NotOrientable) => {}
        Err(other) => panic!("stream rejected with the wrong error: {other:?}"),
        Ok(_) => panic!("stream accepted a non-orientable target"),
    }

    let trivial = Witness {
        m: 1,
        n: 1,
        chain: vec![WitnessTerm {
            coefficient: 1,
            simplex: CombinatorialSimplex {
                r: 0,
                s: 0,
                vertex_map: vec![0, 1, 2],
            },
        }],
        certificates: Default::default(),
    };
    match verify_witness(&klein, &trivial) {
        Err(WitnessRejection::Target(ManifoldError::NotOrientable)) => {}
        other => panic!("verifier accepted a non-orientable target: {other:?}"),
    }
}

// --- a longer schedule than the acceptance gate runs ---

#[test]
fn triangle_stream_descends_to_a_quarter_through_level_eight() {
    let mut stream = SimvolStream::new(&triangle(), 4).expect("triangle is orientable");
    let mut improvements = Vec::new();
    // Seed plus all 330 schedule cells through level eight.
    for _ in 0..=330 {
        let step = stream.advance();
        if let Some(bound) = step.improved {
            improvements.push(bound);
        }
    }
    for pair in improvements.windows(2) {
        assert!(pair[1] < pair[0], "improvements must strictly decrease");
    }
    let best = improvements.last().expect("seed always emits");
    assert!(
        *best <= Rational::ratio(1, 4),
        "running minimum {best} has not reached 1/4 by level eight"
    );
}
