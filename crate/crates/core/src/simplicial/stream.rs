//! Anytime stream of certified upper bounds on the normalized l1-norm of a
//! fundamental class.
//!
//! The stream works through an infinite, fixed schedule of finite searches.
//! Step zero emits the tautological bound: the fundamental cycle itself is
//! the pushforward of its own top-cell inclusions, so the number of top
//! cells bounds the norm. After that, cells are processed in levels
//! `L = 1, 2, ...`; level `L` consists of the addresses `(m, n, r, s)` with
//! `m, n >= 1`, `r, s >= 0`, and `(m - 1) + n + r + s = L`, in
//! lexicographic order. The cell `(m, n, r, s)` searches for a cycle of
//! norm at most `n` built from simplicial maps at exactly domain depth `r`
//! and target depth `s` representing `m` times the fundamental class; a
//! certificate yields the bound `norm / m`.
//!
//! A cell is skipped — deterministically, and still counted as processed —
//! when it cannot produce anything new or would be too large to search:
//!
//! * its bound `n / m` is not strictly below the running minimum;
//! * for `n = 1` (single-map cells, searched by a depth-first scan over
//!   vertex maps): the raw map space `|V(target)| ^ |V(domain)|` exceeds
//!   [`SCAN_CAP`];
//! * for `n >= 2` (searched over a materialized alphabet with residual
//!   hashing): the raw map space exceeds the alphabet cap, the alphabet
//!   itself overflows it, or some block's probe estimate exceeds the
//!   probe cap.
//!
//! Every certificate is re-verified before it is trusted, improvements of
//! the running minimum are the only emissions, and the whole step sequence
//! is byte-for-byte reproducible, independent of the thread count.

use std::collections::VecDeque;

use num_bigint::BigInt;

use crate::rational::Rational;
use crate::simplicial::combinatorial::{
    CertificationContext, CombinatorialSimplex, Witness, WitnessTerm,
};
use crate::simplicial::complex::SimplicialComplex;
use crate::simplicial::fundamental::ManifoldError;
use crate::simplicial::search::{
    block_candidates, build_alphabet, candidate_witness, compositions, ALPHABET_CAP,
};

/// Upper limit on the raw vertex-map count `|V(target)| ^ |V(domain)|`
/// a single-map scan cell may have before it is skipped.
pub const SCAN_CAP: u128 = 1 << 28;

/// Position of one search cell in the schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CellAddress {
    /// Multiplicity of the fundamental class.
    pub m: u64,
    /// Norm budget for the chain.
    pub n: u64,
    /// Exact domain subdivision depth.
    pub r: usize,
    /// Exact target subdivision depth.
    pub s: usize,
}

/// Why a cell was skipped instead of searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// The cell's bound is not below the running minimum.
    CannotImprove,
    /// A single-map scan over more than [`SCAN_CAP`] vertex maps.
    ScanSpaceTooLarge,
    /// The raw map space or alphabet exceeds the materialization cap.
    AlphabetTooLarge,
    /// Some residual-hash block exceeds the probe cap.
    ProbeSpaceTooLarge,
}

impl SkipReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            SkipReason::CannotImprove => "bound not below the running minimum",
            SkipReason::ScanSpaceTooLarge => "vertex-map space above the scan cap",
            SkipReason::AlphabetTooLarge => "map space above the materialization cap",
            SkipReason::ProbeSpaceTooLarge => "residual probes above the block cap",
        }
    }
}

/// Result of processing one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellOutcome {
    /// The cell produced a verified witness.
    Certified(Witness),
    /// The cell was searched completely and holds no witness.
    Exhausted,
    /// The cell was not searched.
    Skipped(SkipReason),
}

impl CellOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            CellOutcome::Certified(_) => "certified",
            CellOutcome::Exhausted => "exhausted",
            CellOutcome::Skipped(_) => "skipped",
        }
    }
}

/// One step of the stream: the seed emission (index 0, no cell) or one
/// scheduled cell. `improved` is set exactly when the step strictly
/// lowered the running minimum.
#[derive(Clone, Debug, PartialEq)]
pub struct StreamStep {
    pub index: u64,
    pub cell: Option<CellAddress>,
    pub outcome: CellOutcome,
    pub improved: Option<Rational>,
}

/// The stream itself. Create it once per target and call [`advance`]
/// repeatedly; each call processes the seed or exactly one cell.
///
/// [`advance`]: SimvolStream::advance
pub struct SimvolStream {
    ctx: CertificationContext,
    threads: usize,
    level: u64,
    queue: VecDeque<CellAddress>,
    steps: u64,
    cells: u64,
    best: Option<Rational>,
    domain_counts: Vec<Vec<u128>>,
    target_counts: Vec<Vec<u128>>,
}

impl SimvolStream {
    pub fn new(target: &SimplicialComplex, threads: usize) -> Result<Self, ManifoldError> {
        let ctx = CertificationContext::new(target)?;
        let domain_counts = vec![face_count_vector(ctx.domain_complex(0))];
        let target_counts = vec![face_count_vector(ctx.target_complex(0))];
        Ok(SimvolStream {
            ctx,
            threads: threads.max(1),
            level: 0,
            queue: VecDeque::new(),
            steps: 0,
            cells: 0,
            best: None,
            domain_counts,
            target_counts,
        })
    }

    /// The best bound emitted so far.
    pub fn running_min(&self) -> Option<&Rational> {
        self.best.as_ref()
    }

    /// Number of schedule cells processed so far (the seed not included).
    pub fn cells_processed(&self) -> u64 {
        self.cells
    }

    /// Process the next step of the schedule.
    pub fn advance(&mut self) -> StreamStep {
        let index = self.steps;
        self.steps += 1;
        if index == 0 {
            let witness = self.seed_witness();
            let bound = Rational::from_int(witness.n);
            self.best = Some(bound.clone());
            return StreamStep {
                index,
                cell: None,
                outcome: CellOutcome::Certified(witness),
                improved: Some(bound),
            };
        }
        while self.queue.is_empty() {
            self.level += 1;
            self.queue.extend(level_cells(self.level));
        }
        let cell = self.queue.pop_front().expect("level is nonempty");
        self.cells += 1;
        let outcome = self.process(cell);
        let improved = match &outcome {
            CellOutcome::Certified(w) => {
                let bound = Rational::ratio(
                    i64::try_from(w.norm()).expect("norm fits in i64"),
                    i64::try_from(cell.m).expect("multiplicity fits in i64"),
                );
                if self.best.as_ref().is_none_or(|b| bound < *b) {
                    self.best = Some(bound.clone());
                    Some(bound)
                } else {
                    None
                }
            }
            _ => None,
        };
        StreamStep {
            index,
            cell: Some(cell),
            outcome,
            improved,
        }
    }

    /// The inclusions of the top cells, weighted by the fundamental cycle,
    /// verified like any other witness.
    fn seed_witness(&mut self) -> Witness {
        let d = self.ctx.dimension();
        let tops: Vec<Vec<usize>> = self.ctx.target_complex(0).simplices(d).to_vec();
        let z = self.ctx.fundamental_at(0).clone();
        let chain: Vec<WitnessTerm> = tops
            .iter()
            .enumerate()
            .map(|(i, tuple)| WitnessTerm {
                coefficient: i64::try_from(&z.coefficient(i)).expect("orientation is a unit"),
                simplex: CombinatorialSimplex {
                    r: 0,
                    s: 0,
                    vertex_map: tuple.clone(),
                },
            })
            .collect();
        let mut witness = Witness {
            m: 1,
            n: tops.len() as u64,
            chain,
            certificates: Default::default(),
        };
        let certs = self
            .ctx
            .verify(&witness)
            .expect("the fundamental cycle certifies itself");
        witness.certificates = certs;
        witness
    }

    fn vertex_count(counts: &mut Vec<Vec<u128>>, depth: usize) -> u128 {
        while counts.len() <= depth {
            let next = subdivided_face_counts(counts.last().expect("base counts"));
            counts.push(next);
        }
        counts[depth][0]
    }

    fn process(&mut self, cell: CellAddress) -> CellOutcome {
        let CellAddress { m, n, r, s } = cell;
        let bound = Rational::ratio(
            i64::try_from(n).expect("norm fits in i64"),
            i64::try_from(m).expect("multiplicity fits in i64"),
        );
        if let Some(best) = &self.best {
            if bound >= *best {
                return CellOutcome::Skipped(SkipReason::CannotImprove);
            }
        }
        let dom_vertices = Self::vertex_count(&mut self.domain_counts, r);
        let tgt_vertices = Self::vertex_count(&mut self.target_counts, s);
        if n == 1 {
            if pow_exceeds(tgt_vertices, dom_vertices, SCAN_CAP) {
                return CellOutcome::Skipped(SkipReason::ScanSpaceTooLarge);
            }
            self.ctx.ensure_depths(r, s);
            scan_cell(&mut self.ctx, m, r, s, self.threads)
        } else {
            if pow_exceeds(tgt_vertices, dom_vertices, ALPHABET_CAP as u128) {
                return CellOutcome::Skipped(SkipReason::AlphabetTooLarge);
            }
            self.ctx.ensure_depths(r, s);
            materialize_cell(&mut self.ctx, m, n, r, s, self.threads)
        }
    }
}

/// The cells of one schedule level, lexicographically ordered.
fn level_cells(level: u64) -> Vec<CellAddress> {
    let mut cells = Vec::new();
    for m in 1..=level {
        let rest = level - (m - 1);
        for n in 1..=rest {
            let rs = rest - n;
            for r in 0..=rs {
                cells.push(CellAddress {
                    m,
                    n,
                    r: r as usize,
                    s: (rs - r) as usize,
                });
            }
        }
    }
    cells
}

/// Simplex counts per dimension, index `k` = number of `k`-simplices.
fn face_count_vector(complex: &SimplicialComplex) -> Vec<u128> {
    (0..=complex.dimension())
        .map(|k| complex.simplex_count(k) as u128)
        .collect()
}

/// Simplex counts of the barycentric subdivision from those of the
/// complex: `k`-simplices of the subdivision are flags of `k + 1` distinct
/// nested faces, counted by descending through face counts of simplices.
fn subdivided_face_counts(counts: &[u128]) -> Vec<u128> {
    let top = counts.len() - 1;
    // weight[l][t] = flags of length l + 1 inside one t-simplex ending at it
    let mut weight = vec![vec![0u128; top + 1]; top + 1];
    for t in 0..=top {
        weight[0][t] = 1;
    }
    for l in 1..=top {
        for t in 0..=top {
            let mut total: u128 = 0;
            for u in 0..t {
                let ways = binomial_u128(t + 1, u + 1);
                total = total.saturating_add(ways.saturating_mul(weight[l - 1][u]));
            }
            weight[l][t] = total;
        }
    }
    (0..=top)
        .map(|k| {
            let mut total: u128 = 0;
            for t in k..=top {
                total = total.saturating_add(counts[t].saturating_mul(weight[k][t]));
            }
            total
        })
        .collect()
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn pow_exceeds(base: u128, exp: u128, cap: u128) -> bool {
    if base <= 1 {
        return 1 > cap;
    }
    let mut acc: u128 = 1;
    let mut left = exp;
    while left > 0 {
        acc = acc.saturating_mul(base);
        if acc > cap {
            return true;
        }
        left -= 1;
    }
    false
}

/// Search a `n >= 2` cell over the alphabet of maps at exactly `(r, s)`.
fn materialize_cell(
    ctx: &mut CertificationContext,
    m: u64,
    n: u64,
    r: usize,
    s: usize,
    threads: usize,
) -> CellOutcome {
    let alphabet = match build_alphabet(ctx, &[(r, s)], s, ALPHABET_CAP) {
        Ok(a) => a,
        Err(_) => return CellOutcome::Skipped(SkipReason::AlphabetTooLarge),
    };
    if alphabet.simplices.is_empty() {
        return CellOutcome::Exhausted;
    }
    let d = ctx.dimension();
    let target_vec = ctx
        .fundamental_at(s)
        .scale(&BigInt::from(m))
        .to_dense(ctx.target_complex(s).simplex_count(d));
    for w in 1..=n {
        for j in 1..=(w.min(alphabet.simplices.len() as u64) as usize) {
            let comps = compositions(w, j);
            let candidates = match block_candidates(
                &alphabet.pushes,
                &alphabet.by_push,
                &target_vec,
                w,
                j,
                threads,
            ) {
                Ok(c) => c,
                Err(_) => return CellOutcome::Skipped(SkipReason::ProbeSpaceTooLarge),
            };
            for candidate in candidates {
                let mut witness = candidate_witness(&alphabet.simplices, &comps, m, w, &candidate);
                if let Ok(certs) = ctx.verify(&witness) {
                    witness.certificates = certs;
                    return CellOutcome::Certified(witness);
                }
            }
        }
    }
    CellOutcome::Exhausted
}

/// Search a `n = 1` cell: one signed map at exactly `(r, s)` whose
/// pushforward is `m` times the fundamental cycle. The scan walks vertex
/// maps depth-first in value order, accumulating the pushforward over
/// completed top cells and pruning whenever the remaining cells cannot
/// close the l1-distance to either signed target.
fn scan_cell(
    ctx: &mut CertificationContext,
    m: u64,
    r: usize,
    s: usize,
    threads: usize,
) -> CellOutcome {
    let d = ctx.dimension();
    let target = ctx.target_complex(s);
    let dims = target.simplex_count(d);
    let mult = i64::try_from(m).expect("multiplicity fits in i64");
    let mut t_plus = vec![0i64; dims];
    for (idx, c) in ctx.fundamental_at(s).iter() {
        t_plus[idx] = mult * i64::try_from(c).expect("orientation is a unit");
    }
    let domain = ctx.domain_complex(r);
    let tops = domain.simplices(d);
    let total: i64 = t_plus.iter().map(|c| c.abs()).sum();
    if total > tops.len() as i64 {
        return CellOutcome::Exhausted;
    }
    let positions = domain.simplex_count(0);
    let mut tops_by_max: Vec<Vec<usize>> = vec![Vec::new(); positions];
    for (ti, tuple) in tops.iter().enumerate() {
        tops_by_max[*tuple.last().expect("nonempty simplex")].push(ti);
    }
    let mut zdom = vec![0i64; tops.len()];
    for (idx, c) in ctx.domain_fundamental_at(r).iter() {
        zdom[idx] = i64::try_from(c).expect("orientation is a unit");
    }
    let values = target.vertex_ids();

    let run_range = |from: usize, to: usize| -> Vec<(Vec<usize>, i64)> {
        let mut scan = Scan {
            target_vec: t_plus.clone(),
            target,
            tops,
            tops_by_max: &tops_by_max,
            zdom: &zdom,
            values: &values,
            map: Vec::with_capacity(positions),
            acc: vec![0i64; dims],
            dist_plus: total,
            dist_minus: total,
            rem: tops.len() as i64,
            out: Vec::new(),
        };
        scan.recurse(positions, Some(from..to));
        scan.out
    };

    let chunk = values.len().div_ceil(threads.max(1)).max(1);
    let mut candidates: Vec<(Vec<usize>, i64)> = if threads <= 1 || values.len() <= 1 {
        run_range(0, values.len())
    } else {
        let bounds: Vec<(usize, usize)> = (0..values.len())
            .step_by(chunk)
            .map(|from| (from, (from + chunk).min(values.len())))
            .collect();
        let run_range = &run_range;
        std::thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(from, to)| scope.spawn(move || run_range(from, to)))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("scan worker panicked"))
                .collect()
        })
    };
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| (a.1 < 0).cmp(&(b.1 < 0))));

    for (vertex_map, sign) in candidates {
        let mut witness = Witness {
            m,
            n: 1,
            chain: vec![WitnessTerm {
                coefficient: sign,
                simplex: CombinatorialSimplex { r, s, vertex_map },
            }],
            certificates: Default::default(),
        };
        if let Ok(certs) = ctx.verify(&witness) {
            witness.certificates = certs;
            return CellOutcome::Certified(witness);
        }
    }
    CellOutcome::Exhausted
}

struct Scan<'a> {
    target_vec: Vec<i64>,
    target: &'a SimplicialComplex,
    tops: &'a [Vec<usize>],
    tops_by_max: &'a [Vec<usize>],
    zdom: &'a [i64],
    values: &'a [usize],
    map: Vec<usize>,
    acc: Vec<i64>,
    dist_plus: i64,
    dist_minus: i64,
    rem: i64,
    out: Vec<(Vec<usize>, i64)>,
}

impl Scan<'_> {
    /// Contributions of the top cells completed by assigning the next
    /// position, or `None` when some completed cell has a non-simplex
    /// image. A contribution is the signed index of a non-degenerate
    /// image; degenerate images contribute nothing but must still land
    /// on simplices.
    fn completions(&self, value: usize) -> Option<Vec<(usize, i64)>> {
        let pos = self.map.len();
        let d = self.tops.first().map_or(0, |t| t.len() - 1);
        let mut deltas = Vec::new();
        for &ti in &self.tops_by_max[pos] {
            let mut image: Vec<usize> = Vec::with_capacity(d + 1);
            let mut inversions = 0usize;
            let mut degenerate = false;
            for &v in &self.tops[ti] {
                let w = if v == pos { value } else { self.map[v] };
                let at = image.partition_point(|&x| x <= w);
                if at > 0 && image[at - 1] == w {
                    degenerate = true;
                } else {
                    inversions += image.len() - at;
                    image.insert(at, w);
                }
            }
            if degenerate {
                // Rebuild the dedup image cheaply: sorted order, unique.
                if self
                    .target
                    .simplex_index(image.len() - 1, &image)
                    .is_none()
                {
                    return None;
                }
                continue;
            }
            let idx = self.target.simplex_index(d, &image)?;
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            deltas.push((idx, self.zdom[ti] * sign));
        }
        Some(deltas)
    }

    fn apply(&mut self, deltas: &[(usize, i64)]) {
        for &(idx, delta) in deltas {
            let before = self.acc[idx];
            let after = before + delta;
            let t = self.target_vec[idx];
            self.dist_plus += (t - after).abs() - (t - before).abs();
            self.dist_minus += (t + after).abs() - (t + before).abs();
            self.acc[idx] = after;
        }
    }

    fn revert(&mut self, deltas: &[(usize, i64)]) {
        for &(idx, delta) in deltas {
            let before = self.acc[idx];
            let after = before - delta;
            let t = self.target_vec[idx];
            self.dist_plus += (t - after).abs() - (t - before).abs();
            self.dist_minus += (t + after).abs() - (t + before).abs();
            self.acc[idx] = after;
        }
    }

    fn recurse(&mut self, positions: usize, first_range: Option<std::ops::Range<usize>>) {
        let pos = self.map.len();
        if pos == positions {
            if self.dist_plus == 0 {
                self.out.push((self.map.clone(), 1));
            }
            if self.dist_minus == 0 {
                self.out.push((self.map.clone(), -1));
            }
            return;
        }
        let range = match &first_range {
            Some(range) if pos == 0 => range.clone(),
            _ => 0..self.values.len(),
        };
        for value_idx in range {
            let value = self.values[value_idx];
            let Some(deltas) = self.completions(value) else {
                continue;
            };
            self.apply(&deltas);
            self.rem -= self.tops_by_max[pos].len() as i64;
            self.map.push(value);
            if self.dist_plus <= self.rem || self.dist_minus <= self.rem {
                self.recurse(positions, None);
            }
            self.map.pop();
            self.rem += self.tops_by_max[pos].len() as i64;
            self.revert(&deltas);
        }
    }
}

// --- tests ---

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::fixtures;
    use crate::simplicial::subdivision::Tower;

    fn drive(stream: &mut SimvolStream, steps: usize) -> Vec<StreamStep> {
        (0..steps).map(|_| stream.advance()).collect()
    }

    fn emissions(steps: &[StreamStep]) -> Vec<(Option<CellAddress>, Rational)> {
        steps
            .iter()
            .filter_map(|st| st.improved.clone().map(|b| (st.cell, b)))
            .collect()
    }

    // --- schedule ---

    #[test]
    fn levels_enumerate_lexicographically() {
        let l3 = level_cells(3);
        let expect = [
            (1, 1, 0, 2),
            (1, 1, 1, 1),
            (1, 1, 2, 0),
            (1, 2, 0, 1),
            (1, 2, 1, 0),
            (1, 3, 0, 0),
            (2, 1, 0, 1),
            (2, 1, 1, 0),
            (2, 2, 0, 0),
            (3, 1, 0, 0),
        ];
        let got: Vec<(u64, u64, usize, usize)> =
            l3.iter().map(|c| (c.m, c.n, c.r, c.s)).collect();
        assert_eq!(got, expect);
        // Level sizes are tetrahedral: C(level + 2, 3).
        for level in 1..=8u64 {
            let expected = (level * (level + 1) * (level + 2)) / 6;
            assert_eq!(level_cells(level).len() as u64, expected);
        }
    }

    #[test]
    fn subdivision_counts_match_materialized_towers() {
        for base in [
            fixtures::triangle(),
            fixtures::standard_simplex(3),
            fixtures::boundary_delta3(),
        ] {
            let mut counts = face_count_vector(&base);
            let mut tower = Tower::new(base);
            for depth in 1..=2 {
                tower.ensure_depth(depth);
                counts = subdivided_face_counts(&counts);
                assert_eq!(counts, face_count_vector(tower.complex(depth)));
            }
        }
    }

    #[test]
    fn power_cap_checks_are_exact() {
        assert!(!pow_exceeds(3, 17, SCAN_CAP)); // 3^17 < 2^28
        assert!(pow_exceeds(3, 18, SCAN_CAP));
        assert!(pow_exceeds(4, 15, SCAN_CAP)); // 2^30
        assert!(!pow_exceeds(1, u128::MAX, 1));
        assert!(pow_exceeds(2, 200, SCAN_CAP));
    }

    // --- the triangle stream ---

    #[test]
    fn triangle_stream_improves_through_the_schedule() {
        let c = fixtures::triangle();
        let mut stream = SimvolStream::new(&c, 1).unwrap();
        // Seed plus levels 1..=5: 1 + 1 + 4 + 10 + 20 + 35 = 71 steps.
        let steps = drive(&mut stream, 71);
        assert_eq!(stream.cells_processed(), 70);
        let got = emissions(&steps);
        assert_eq!(got.len(), 3);
        assert_eq!(got[0], (None, Rational::from_int(3)));
        assert_eq!(
            got[1],
            (
                Some(CellAddress { m: 1, n: 1, r: 2, s: 0 }),
                Rational::from_int(1)
            )
        );
        assert_eq!(
            got[2],
            (
                Some(CellAddress { m: 2, n: 1, r: 3, s: 0 }),
                Rational::ratio(1, 2)
            )
        );
        assert_eq!(stream.running_min(), Some(&Rational::ratio(1, 2)));
        // Cells whose bound cannot improve are skipped, not searched.
        let skipped = steps.iter().any(|st| {
            st.cell == Some(CellAddress { m: 1, n: 3, r: 0, s: 0 })
                && st.outcome == CellOutcome::Skipped(SkipReason::CannotImprove)
        });
        assert!(skipped);
    }

    #[test]
    fn stream_steps_are_thread_invariant() {
        let c = fixtures::triangle();
        let mut runs = Vec::new();
        for threads in [1, 4, 5] {
            let mut stream = SimvolStream::new(&c, threads).unwrap();
            runs.push(drive(&mut stream, 71));
        }
        assert_eq!(runs[0], runs[1]);
        assert_eq!(runs[0], runs[2]);
    }

    #[test]
    fn sphere_stream_folds_and_skips_oversized_scans() {
        let c = fixtures::boundary_delta3();
        let mut stream = SimvolStream::new(&c, 2).unwrap();
        // Seed plus levels 1..=3: 16 steps.
        let steps = drive(&mut stream, 16);
        // Two once-subdivided triangles fold onto the sphere with norm 2.
        let got = emissions(&steps);
        assert_eq!(got.len(), 2);
        assert_eq!(got[0], (None, Rational::from_int(4)));
        assert_eq!(
            got[1],
            (
                Some(CellAddress { m: 1, n: 2, r: 1, s: 0 }),
                Rational::from_int(2)
            )
        );
        assert_eq!(stream.running_min(), Some(&Rational::from_int(2)));
        let fold = steps.iter().find(|st| st.improved == Some(Rational::from_int(2)));
        let Some(CellOutcome::Certified(w)) = fold.map(|st| &st.outcome) else {
            panic!("the fold must be a certificate");
        };
        assert_eq!(w.norm(), 2);
        assert!(w.chain.iter().all(|t| t.simplex.r == 1 && t.simplex.s == 0));
        // A twice-subdivided domain has 25 vertices: 4^25 maps is above
        // the scan cap, so that cell is skipped deterministically.
        let skip = steps
            .iter()
            .find(|st| st.cell == Some(CellAddress { m: 1, n: 1, r: 2, s: 0 }))
            .unwrap();
        assert_eq!(
            skip.outcome,
            CellOutcome::Skipped(SkipReason::ScanSpaceTooLarge)
        );
    }

    #[test]
    fn seed_witness_is_the_fundamental_cycle() {
        let c = fixtures::boundary_delta3();
        let mut stream = SimvolStream::new(&c, 1).unwrap();
        let seed = stream.advance();
        assert_eq!(seed.index, 0);
        assert_eq!(seed.cell, None);
        let CellOutcome::Certified(w) = &seed.outcome else {
            panic!("seed must certify");
        };
        assert_eq!(w.m, 1);
        assert_eq!(w.norm(), 4);
        assert!(w.chain.iter().all(|t| t.simplex.r == 0 && t.simplex.s == 0));
    }
}
