//! Budgeted searches for witness chains.
//!
//! Chains over an alphabet of combinatorial simplices are ordered
//! canonically: by total norm, then support size, then the support's
//! alphabet positions (lexicographically), then the norm composition
//! (lexicographically), then the sign pattern (+ before -). Every search
//! resolves ties in this order, so results do not depend on thread count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use super::combinatorial::{
    CertificationContext, CombinatorialSimplex, Witness, WitnessTerm,
};
use super::complex::SimplicialComplex;
use super::fundamental::ManifoldError;

/// Hard cap on materialized alphabets (maps across all depth pairs).
pub const ALPHABET_CAP: usize = 200_000;
/// Hard cap on hash probes for a single (norm, support-size) block.
pub const PROBE_CAP: u128 = 1 << 27;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("target complex: {0}")]
    Target(#[from] ManifoldError),
    #[error("multiplicity m must be positive")]
    ZeroMultiplicity,
    #[error("alphabet for depths up to ({r_max}, {s_max}) exceeds {cap} maps")]
    AlphabetTooLarge {
        r_max: usize,
        s_max: usize,
        cap: usize,
    },
    #[error(
        "norm-{w} blocks over {alphabet} letters need about {estimate} probes, over the {cap} cap"
    )]
    SearchSpaceTooLarge {
        w: u64,
        alphabet: usize,
        estimate: u128,
        cap: u128,
    },
}

/// Result of a budgeted search: either a verified witness, or the honest
/// statement that the budget is exhausted — never a refutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Certified(Witness),
    Exhausted,
}

/// All simplicial vertex maps at depths exactly `(r, s)`, in lexicographic
/// order of their vertex-image vectors. Depth-first over positions with
/// partial-image pruning: once some top cell's partial image fails to span
/// a simplex, no extension can repair it.
pub fn simplicial_maps(
    ctx: &CertificationContext,
    r: usize,
    s: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>, SearchError> {
    let dom = ctx.domain_complex(r);
    let tgt = ctx.target_complex(s);
    let d = ctx.dimension();
    let n_positions = dom.simplex_count(0);
    let values = tgt.vertex_ids();

    // Tops containing each vertex; positions are assigned in id order, so
    // when position v is set, exactly the prefix 0..=v is known.
    let mut tops_with: Vec<Vec<usize>> = vec![Vec::new(); n_positions];
    for (t, top) in dom.simplices(d).iter().enumerate() {
        for &v in top {
            tops_with[v].push(t);
        }
    }

    let mut out = Vec::new();
    let mut current = vec![0usize; n_positions];
    let tops = dom.simplices(d);

    fn admissible(
        tgt: &SimplicialComplex,
        tops: &[Vec<usize>],
        relevant: &[usize],
        current: &[usize],
        v: usize,
    ) -> bool {
        for &t in relevant {
            let mut image: Vec<usize> = tops[t]
                .iter()
                .filter(|&&u| u <= v)
                .map(|&u| current[u])
                .collect();
            image.sort_unstable();
            image.dedup();
            if tgt.simplex_index(image.len() - 1, &image).is_none() {
                return false;
            }
        }
        true
    }

    fn rec(
        v: usize,
        n_positions: usize,
        values: &[usize],
        tgt: &SimplicialComplex,
        tops: &[Vec<usize>],
        tops_with: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if v == n_positions {
            if out.len() == cap {
                return false;
            }
            out.push(current.clone());
            return true;
        }
        for &val in values {
            current[v] = val;
            if admissible(tgt, tops, &tops_with[v], current, v)
                && !rec(
                    v + 1,
                    n_positions,
                    values,
                    tgt,
                    tops,
                    tops_with,
                    current,
                    out,
                    cap,
                )
            {
                return false;
            }
        }
        true
    }

    if !rec(
        0,
        n_positions,
        &values,
        tgt,
        tops,
        &tops_with,
        &mut current,
        &mut out,
        cap,
    ) {
        return Err(SearchError::AlphabetTooLarge {
            r_max: r,
            s_max: s,
            cap,
        });
    }
    Ok(out)
}

/// Compositions of `w` into exactly `j` positive parts, lexicographically.
pub(crate) fn compositions(w: u64, j: usize) -> Vec<Vec<u64>> {
    fn rec(rest: u64, parts: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            current.push(rest);
            out.push(current.clone());
            current.pop();
            return;
        }
        for first in 1..=rest - (parts as u64 - 1) {
            current.push(first);
            rec(rest - first, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if j >= 1 && w >= j as u64 {
        rec(w, j, &mut Vec::new(), &mut out);
    }
    out
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let needed = k - current.len();
        for i in start..=n.saturating_sub(needed) {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn binomial_estimate(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// A candidate chain inside one (norm, support-size) block, identified by
/// its canonical sort key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Candidate {
    pub indices: Vec<usize>,
    pub comp_idx: usize,
    pub sign_idx: u64,
}

/// All chains of norm exactly `w` on exactly `j` letters whose pushforward
/// equals the target vector, found by hashing: fix all but the last letter,
/// then look the forced last pushforward up. Equality of top-dimensional
/// pushes is exactly the class condition, so this loses no verifiable chain.
/// Results come back canonically sorted regardless of `threads`.
pub(crate) fn block_candidates(
    pushes: &[Vec<BigInt>],
    by_push: &HashMap<Vec<BigInt>, Vec<usize>>,
    target: &[BigInt],
    w: u64,
    j: usize,
    threads: usize,
) -> Result<Vec<Candidate>, SearchError> {
    let comps = compositions(w, j);
    if comps.is_empty() || j > pushes.len() {
        return Ok(Vec::new());
    }
    let estimate = binomial_estimate(pushes.len(), j - 1)
        .saturating_mul(comps.len() as u128)
        .saturating_mul(1u128 << (j - 1).min(64));
    if estimate > PROBE_CAP {
        return Err(SearchError::SearchSpaceTooLarge {
            w,
            alphabet: pushes.len(),
            estimate,
            cap: PROBE_CAP,
        });
    }
    let prefixes = combinations(pushes.len(), j - 1);

    let probe_prefix = |prefix: &[usize], out: &mut Vec<Candidate>| {
        let dims = target.len();
        for (comp_idx, comp) in comps.iter().enumerate() {
            for prefix_signs in 0..(1u64 << (j - 1)) {
                let mut residual = target.to_vec();
                for (k, &i_k) in prefix.iter().enumerate() {
                    let bit = (prefix_signs >> (j - 2 - k)) & 1;
                    let c = BigInt::from(comp[k]) * if bit == 0 { 1 } else { -1 };
                    for (coord, p) in residual.iter_mut().zip(&pushes[i_k]) {
                        *coord -= p * &c;
                    }
                }
                // Divide by the last coefficient once; the negative-sign
                // probe is the negation.
                let c_last = BigInt::from(comp[j - 1]);
                let mut needed = Vec::with_capacity(dims);
                let mut exact = true;
                for coord in &residual {
                    let (q, rem) = coord.div_rem(&c_last);
                    if !rem.is_zero() {
                        exact = false;
                        break;
                    }
                    needed.push(q);
                }
                if !exact {
                    continue;
                }
                let floor = prefix.last().map(|&i| i + 1).unwrap_or(0);
                for (bit, probe) in [
                    (0u64, needed.clone()),
                    (1u64, needed.iter().map(|x| -x).collect::<Vec<_>>()),
                ] {
                    if let Some(hits) = by_push.get(&probe) {
                        for &i_j in hits {
                            if i_j >= floor {
                                let mut indices = prefix.to_vec();
                                indices.push(i_j);
                                out.push(Candidate {
                                    indices,
                                    comp_idx,
                                    sign_idx: (prefix_signs << 1) | bit,
                                });
                            }
                        }
                    }
                }
            }
        }
    };

    let mut candidates = if threads <= 1 || prefixes.len() < 2 {
        let mut out = Vec::new();
        for prefix in &prefixes {
            probe_prefix(prefix, &mut out);
        }
        out
    } else {
        let chunk = prefixes.len().div_ceil(threads);
        let mut collected: Vec<Vec<Candidate>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = prefixes
                .chunks(chunk)
                .map(|slice| {
                    let probe_prefix = &probe_prefix;
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        for prefix in slice {
                            probe_prefix(prefix, &mut out);
                        }
                        out
                    })
                })
                .collect();
            for h in handles {
                collected.push(h.join().expect("search worker panicked"));
            }
        });
        collected.into_iter().flatten().collect()
    };
    candidates.sort();
    Ok(candidates)
}

/// Turn a block candidate into a witness with the exact norm it uses.
pub(crate) fn candidate_witness(
    alphabet: &[CombinatorialSimplex],
    comps: &[Vec<u64>],
    m: u64,
    w: u64,
    candidate: &Candidate,
) -> Witness {
    let comp = &comps[candidate.comp_idx];
    let j = candidate.indices.len();
    let chain = candidate
        .indices
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let bit = (candidate.sign_idx >> (j - 1 - k)) & 1;
            let sign = if bit == 0 { 1 } else { -1 };
            WitnessTerm {
                coefficient: comp[k] as i64 * sign,
                simplex: alphabet[i].clone(),
            }
        })
        .collect();
    Witness {
        m,
        n: w,
        chain,
        certificates: Default::default(),
    }
}

/// The alphabet for all depth pairs up to the budget, in canonical order,
/// with pushforwards promoted to a common target depth and indexed for
/// residual lookups.
pub(crate) struct Alphabet {
    pub simplices: Vec<CombinatorialSimplex>,
    pub pushes: Vec<Vec<BigInt>>,
    pub by_push: HashMap<Vec<BigInt>, Vec<usize>>,
}

pub(crate) fn build_alphabet(
    ctx: &CertificationContext,
    depth_pairs: &[(usize, usize)],
    compare_depth: usize,
    cap: usize,
) -> Result<Alphabet, SearchError> {
    let d = ctx.dimension();
    let dims = ctx.target_complex(compare_depth).simplex_count(d);
    let mut simplices = Vec::new();
    for &(r, s) in depth_pairs {
        let remaining = cap - simplices.len();
        let maps = simplicial_maps(ctx, r, s, remaining)?;
        simplices.extend(maps.into_iter().map(|vertex_map| CombinatorialSimplex {
            r,
            s,
            vertex_map,
        }));
    }
    let pushes: Vec<Vec<BigInt>> = simplices
        .iter()
        .map(|cs| ctx.push_promoted(cs, compare_depth).to_dense(dims))
        .collect();
    let mut by_push: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
    for (i, p) in pushes.iter().enumerate() {
        by_push.entry(p.clone()).or_default().push(i);
    }
    Ok(Alphabet {
        simplices,
        pushes,
        by_push,
    })
}

/// Search for a witness that `n / m` bounds the normalized fundamental
/// class, over combinatorial simplices with domain depth at most `r_max`
/// and target depth at most `s_max`.
///
/// Certified results carry a fully verified witness whose `n` is the norm
/// actually used. `Exhausted` means only that this budget contains no
/// witness.
pub fn semi_decide(
    target: &SimplicialComplex,
    m: u64,
    n: u64,
    r_max: usize,
    s_max: usize,
    threads: usize,
) -> Result<SearchOutcome, SearchError> {
    if m == 0 {
        return Err(SearchError::ZeroMultiplicity);
    }
    let mut ctx = CertificationContext::new(target)?;
    ctx.ensure_depths(r_max, s_max);
    let mut depth_pairs = Vec::new();
    for r in 0..=r_max {
        for s in 0..=s_max {
            depth_pairs.push((r, s));
        }
    }
    let alphabet = build_alphabet(&ctx, &depth_pairs, s_max, ALPHABET_CAP)?;
    let d = ctx.dimension();
    let target_vec = ctx
        .fundamental_at(s_max)
        .scale(&BigInt::from(m))
        .to_dense(ctx.target_complex(s_max).simplex_count(d));

    for w in 1..=n {
        for j in 1..=(w.min(alphabet.simplices.len() as u64) as usize) {
            let comps = compositions(w, j);
            let candidates = block_candidates(
                &alphabet.pushes,
                &alphabet.by_push,
                &target_vec,
                w,
                j,
                threads,
            )?;
            for candidate in candidates {
                let mut witness =
                    candidate_witness(&alphabet.simplices, &comps, m, w, &candidate);
                if let Ok(certs) = ctx.verify(&witness) {
                    witness.certificates = certs;
                    return Ok(SearchOutcome::Certified(witness));
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// Reference implementation: enumerate every chain in canonical order and
/// fully verify each one. Exponential; for cross-checking small budgets.
pub fn semi_decide_naive(
    target: &SimplicialComplex,
    m: u64,
    n: u64,
    r_max: usize,
    s_max: usize,
) -> Result<SearchOutcome, SearchError> {
    if m == 0 {
        return Err(SearchError::ZeroMultiplicity);
    }
    let mut ctx = CertificationContext::new(target)?;
    ctx.ensure_depths(r_max, s_max);
    let mut depth_pairs = Vec::new();
    for r in 0..=r_max {
        for s in 0..=s_max {
            depth_pairs.push((r, s));
        }
    }
    let alphabet = build_alphabet(&ctx, &depth_pairs, s_max, ALPHABET_CAP)?;
    let mut enumerator = ChainEnumerator::new(alphabet.simplices, n);
    while let Some(chain) = enumerator.next_chain() {
        let witness = Witness {
            m,
            n: chain.iter().map(|(c, _)| c.unsigned_abs()).sum(),
            chain: chain
                .iter()
                .map(|&(coefficient, idx)| WitnessTerm {
                    coefficient,
                    simplex: enumerator.alphabet()[idx].clone(),
                })
                .collect(),
            certificates: Default::default(),
        };
        if let Ok(certs) = ctx.verify(&witness) {
            let mut witness = witness;
            witness.certificates = certs;
            return Ok(SearchOutcome::Certified(witness));
        }
    }
    Ok(SearchOutcome::Exhausted)
}

/// Lazy enumeration of all chains with norm at most `n` over a fixed
/// alphabet, in canonical order, starting with the empty chain.
pub struct ChainEnumerator {
    alphabet: Vec<CombinatorialSimplex>,
    n: u64,
    next_w: u64,
    buffer: std::collections::VecDeque<Vec<(i64, usize)>>,
    started: bool,
}

impl ChainEnumerator {
    pub fn new(alphabet: Vec<CombinatorialSimplex>, n: u64) -> Self {
        ChainEnumerator {
            alphabet,
            n,
            next_w: 1,
            buffer: Default::default(),
            started: false,
        }
    }

    pub fn alphabet(&self) -> &[CombinatorialSimplex] {
        &self.alphabet
    }

    /// Chains as (coefficient, alphabet index) pairs with ascending indices.
    pub fn next_chain(&mut self) -> Option<Vec<(i64, usize)>> {
        if !self.started {
            self.started = true;
            return Some(Vec::new());
        }
        while self.buffer.is_empty() {
            if self.next_w > self.n {
                return None;
            }
            let w = self.next_w;
            self.next_w += 1;
            for j in 1..=(w.min(self.alphabet.len() as u64) as usize) {
                let comps = compositions(w, j);
                for combo in combinations(self.alphabet.len(), j) {
                    for comp in &comps {
                        for signs in 0..(1u64 << j) {
                            let chain = combo
                                .iter()
                                .enumerate()
                                .map(|(k, &i)| {
                                    let bit = (signs >> (j - 1 - k)) & 1;
                                    let sign = if bit == 0 { 1 } else { -1 };
                                    (comp[k] as i64 * sign, i)
                                })
                                .collect();
                            self.buffer.push_back(chain);
                        }
                    }
                }
            }
        }
        self.buffer.pop_front()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::combinatorial::verify_witness;
    use crate::simplicial::fixtures;

    // --- ordering helpers ---

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(
            compositions(4, 2),
            vec![vec![1, 3], vec![2, 2], vec![3, 1]]
        );
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }

    // --- alphabets ---

    #[test]
    fn depth_zero_maps_on_the_triangle() {
        let c = fixtures::triangle();
        let ctx = CertificationContext::new(&c).unwrap();
        // Both endpoints map anywhere: every pair of triangle vertices
        // spans an edge or a vertex.
        let maps = simplicial_maps(&ctx, 0, 0, 1000).unwrap();
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[0], vec![0, 0]);
        assert!(maps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn alphabet_cap_is_enforced() {
        let c = fixtures::triangle();
        let ctx = CertificationContext::new(&c).unwrap();
        assert!(matches!(
            simplicial_maps(&ctx, 0, 0, 5),
            Err(SearchError::AlphabetTooLarge { .. })
        ));
    }

    #[test]
    fn sphere_depth_zero_alphabet_counts_collapsing_maps() {
        let c = fixtures::boundary_delta3();
        let ctx = CertificationContext::new(&c).unwrap();
        // All 64 maps of three vertices into four are simplicial here.
        let maps = simplicial_maps(&ctx, 0, 0, 1000).unwrap();
        assert_eq!(maps.len(), 64);
    }

    // --- semi-decision ---

    #[test]
    fn triangle_wrap_is_found_within_depth_two() {
        let c = fixtures::triangle();
        let out = semi_decide(&c, 1, 1, 2, 0, 1).unwrap();
        let SearchOutcome::Certified(w) = out else {
            panic!("expected a certificate");
        };
        assert_eq!((w.m, w.n), (1, 1));
        assert_eq!(w.chain.len(), 1);
        assert_eq!(w.chain[0].simplex.r, 2);
        verify_witness(&c, &w).unwrap();
    }

    #[test]
    fn triangle_norm_one_needs_the_deeper_domain() {
        let c = fixtures::triangle();
        assert_eq!(
            semi_decide(&c, 1, 1, 1, 0, 1).unwrap(),
            SearchOutcome::Exhausted
        );
        // Depth-zero maps push single edges, so norm two cannot cover the
        // three-edge loop.
        assert_eq!(
            semi_decide(&c, 1, 2, 0, 0, 1).unwrap(),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn triangle_norm_two_certifies_at_depth_one() {
        // Two once-subdivided edges with cancelling boundaries cover the
        // loop: one passes through a vertex, the other traverses two edges.
        let c = fixtures::triangle();
        let SearchOutcome::Certified(w) = semi_decide(&c, 1, 2, 1, 0, 1).unwrap() else {
            panic!("expected a certificate");
        };
        assert_eq!(w.norm(), 2);
        assert!(w.chain.iter().all(|t| t.simplex.r == 1));
        verify_witness(&c, &w).unwrap();
    }

    #[test]
    fn sphere_four_face_witness_is_found_at_depth_zero() {
        let c = fixtures::boundary_delta3();
        let out = semi_decide(&c, 1, 4, 0, 0, 1).unwrap();
        let SearchOutcome::Certified(w) = out else {
            panic!("expected a certificate");
        };
        assert_eq!(w.norm(), 4);
        assert_eq!(w.chain.len(), 4);
        verify_witness(&c, &w).unwrap();
        // Norm three is impossible: four faces must each be covered.
        assert_eq!(
            semi_decide(&c, 1, 3, 0, 0, 1).unwrap(),
            SearchOutcome::Exhausted
        );
    }

    #[test]
    fn multiplicity_zero_is_rejected() {
        let c = fixtures::triangle();
        assert!(matches!(
            semi_decide(&c, 0, 1, 0, 0, 1),
            Err(SearchError::ZeroMultiplicity)
        ));
    }

    // --- equivalence with the reference enumeration ---

    #[test]
    fn hashed_and_naive_searches_agree_on_certificates() {
        let c = fixtures::triangle();
        for (m, n, r_max) in [(1u64, 1u64, 2usize), (1, 3, 0), (2, 2, 2)] {
            let fast = semi_decide(&c, m, n, r_max, 0, 1).unwrap();
            let slow = semi_decide_naive(&c, m, n, r_max, 0).unwrap();
            assert_eq!(fast, slow, "m={m} n={n} r_max={r_max}");
        }
    }

    #[test]
    fn hashed_and_naive_searches_agree_on_exhaustion() {
        let c = fixtures::boundary_delta3();
        let fast = semi_decide(&c, 1, 2, 0, 0, 1).unwrap();
        let slow = semi_decide_naive(&c, 1, 2, 0, 0).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast, SearchOutcome::Exhausted);
    }

    #[test]
    fn results_are_thread_count_invariant() {
        let c = fixtures::triangle();
        let one = semi_decide(&c, 2, 2, 2, 0, 1).unwrap();
        let many = semi_decide(&c, 2, 2, 2, 0, 5).unwrap();
        assert_eq!(one, many);
        let s = fixtures::boundary_delta3();
        let one = semi_decide(&s, 1, 4, 0, 0, 1).unwrap();
        let four = semi_decide(&s, 1, 4, 0, 0, 4).unwrap();
        assert_eq!(one, four);
    }

    // --- the enumerator itself ---

    #[test]
    fn enumerator_starts_empty_and_orders_by_norm() {
        let c = fixtures::triangle();
        let ctx = CertificationContext::new(&c).unwrap();
        let maps = simplicial_maps(&ctx, 0, 0, 1000).unwrap();
        let alphabet: Vec<CombinatorialSimplex> = maps
            .into_iter()
            .map(|vertex_map| CombinatorialSimplex {
                r: 0,
                s: 0,
                vertex_map,
            })
            .collect();
        let mut e = ChainEnumerator::new(alphabet, 2);
        assert_eq!(e.next_chain(), Some(vec![]));
        assert_eq!(e.next_chain(), Some(vec![(1, 0)]));
        assert_eq!(e.next_chain(), Some(vec![(-1, 0)]));
        assert_eq!(e.next_chain(), Some(vec![(1, 1)]));
        let mut norms = Vec::new();
        let mut count = 0usize;
        let mut e = ChainEnumerator::new(
            vec![
                CombinatorialSimplex {
                    r: 0,
                    s: 0,
                    vertex_map: vec![0, 0],
                },
                CombinatorialSimplex {
                    r: 0,
                    s: 0,
                    vertex_map: vec![0, 1],
                },
            ],
            3,
        );
        while let Some(chain) = e.next_chain() {
            norms.push(chain.iter().map(|(c, _)| c.unsigned_abs()).sum::<u64>());
            count += 1;
        }
        assert!(norms.windows(2).all(|w| w[0] <= w[1]));
        // Norm w chains on two letters: 2*2 singletons per w, plus
        // 4*(w-1) two-letter chains: w=1: 4; w=2: 8; w=3: 12; plus empty.
        assert_eq!(count, 1 + 4 + 8 + 12);
    }
}
