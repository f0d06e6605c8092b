//! Barycentric subdivision: complexes, vertex bookkeeping, and chain maps.

use num_bigint::BigInt;

use super::complex::{SimplicialChain, SimplicialComplex};

/// All permutations of `0..n` in lexicographic order, with parities.
pub(crate) fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, i64)>,
    ) {
        if current.len() == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if current[i] > current[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            out.push((current.clone(), sign));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// One barycentric subdivision of a complex.
///
/// Vertices of the subdivision are barycenters of source simplices,
/// numbered dimension-major: first the source vertices (in order), then the
/// edge barycenters, and so on. A simplex of the subdivision is a flag of
/// source simplices, listed by increasing dimension — which is also
/// increasing vertex id, so tuples need no reordering.
pub struct Subdivision {
    complex: SimplicialComplex,
    vertex_source: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    /// [k][source index] = signed subdivision simplices, one per flag.
    chain_maps: Vec<Vec<Vec<(usize, i64)>>>,
}

pub fn subdivide(source: &SimplicialComplex) -> Subdivision {
    let d = source.dimension();
    let mut offsets = vec![0usize; d + 2];
    for k in 0..=d {
        offsets[k + 1] = offsets[k] + source.simplex_count(k);
    }
    let vertex_source: Vec<(usize, usize)> = (0..=d)
        .flat_map(|k| (0..source.simplex_count(k)).map(move |i| (k, i)))
        .collect();

    // A flag starting from a permutation of a source simplex's vertices:
    // barycenter ids of the growing prefix sets.
    let flag_tuple = |simplex: &[usize], perm: &[usize], k: usize| -> Vec<usize> {
        let mut tuple = Vec::with_capacity(k + 1);
        let mut prefix: Vec<usize> = Vec::with_capacity(k + 1);
        for (j, &p) in perm.iter().enumerate() {
            let v = simplex[p];
            let pos = prefix.binary_search(&v).expect_err("vertices are distinct");
            prefix.insert(pos, v);
            let idx = source
                .simplex_index(j, &prefix)
                .expect("prefix of a simplex is a face");
            tuple.push(offsets[j] + idx);
        }
        tuple
    };

    let top_perms = permutations_with_sign(d + 1);
    let mut tops = Vec::with_capacity(source.simplex_count(d) * top_perms.len());
    for simplex in source.simplices(d) {
        for (perm, _) in &top_perms {
            tops.push(flag_tuple(simplex, perm, d));
        }
    }
    let complex = SimplicialComplex::from_top_simplices(d, tops, None)
        .expect("subdivision of a valid complex is valid");

    let mut chain_maps = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let perms = permutations_with_sign(k + 1);
        let mut level = Vec::with_capacity(source.simplex_count(k));
        for simplex in source.simplices(k) {
            let mut images = Vec::with_capacity(perms.len());
            for (perm, sign) in &perms {
                let tuple = flag_tuple(simplex, perm, k);
                let idx = complex
                    .simplex_index(k, &tuple)
                    .expect("flags of faces appear in the subdivision");
                images.push((idx, *sign));
            }
            level.push(images);
        }
        chain_maps.push(level);
    }

    Subdivision {
        complex,
        vertex_source,
        offsets,
        chain_maps,
    }
}

impl Subdivision {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Which source simplex a subdivision vertex is the barycenter of.
    pub fn vertex_source(&self, id: usize) -> (usize, usize) {
        self.vertex_source[id]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_source.len()
    }

    /// Vertex id of the barycenter of source simplex `idx` in dimension `k`.
    pub fn barycenter_id(&self, k: usize, idx: usize) -> usize {
        self.offsets[k] + idx
    }

    /// Apply the subdivision chain map to a chain on the source.
    pub fn push_chain(&self, chain: &SimplicialChain) -> SimplicialChain {
        let k = chain.degree();
        let mut out = SimplicialChain::zero(k);
        for (i, c) in chain.iter() {
            for &(j, s) in &self.chain_maps[k][i] {
                out.add_coefficient(j, c * BigInt::from(s));
            }
        }
        out
    }
}

/// Transport a simplicial vertex map through one subdivision on both sides.
///
/// `f` sends vertex ids of `a` to vertex ids of `b`, injectively on every
/// simplex, and `a`'s vertex ids must be `0..n`. The result maps barycenter
/// ids of `sd_a` to barycenter ids of `sd_b` (the barycenter of a simplex
/// goes to the barycenter of its image).
pub fn subdivide_vertex_map(
    f: &[usize],
    a: &SimplicialComplex,
    sd_a: &Subdivision,
    b: &SimplicialComplex,
    sd_b: &Subdivision,
) -> Vec<usize> {
    debug_assert!(a
        .vertex_ids()
        .iter()
        .enumerate()
        .all(|(i, &v)| i == v), "domain vertex ids must be 0..n");
    (0..sd_a.vertex_count())
        .map(|id| {
            let (k, idx) = sd_a.vertex_source(id);
            let simplex = &a.simplices(k)[idx];
            let mut image: Vec<usize> = simplex.iter().map(|&v| f[v]).collect();
            image.sort_unstable();
            debug_assert!(image.windows(2).all(|w| w[0] < w[1]), "map not injective on a simplex");
            let b_idx = b
                .simplex_index(k, &image)
                .expect("image of a simplex under a simplicial map");
            sd_b.barycenter_id(k, b_idx)
        })
        .collect()
}

/// A complex together with its iterated subdivisions, built on demand.
pub struct Tower {
    base: SimplicialComplex,
    levels: Vec<Subdivision>,
}

impl Tower {
    pub fn new(base: SimplicialComplex) -> Self {
        Tower {
            base,
            levels: Vec::new(),
        }
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn ensure_depth(&mut self, depth: usize) {
        while self.levels.len() < depth {
            let next = subdivide(self.complex(self.levels.len()));
            self.levels.push(next);
        }
    }

    /// The `depth`-fold subdivision of the base (depth 0 is the base).
    pub fn complex(&self, depth: usize) -> &SimplicialComplex {
        if depth == 0 {
            &self.base
        } else {
            self.levels[depth - 1].complex()
        }
    }

    /// The subdivision step from depth `depth` to `depth + 1`.
    pub fn step(&self, depth: usize) -> &Subdivision {
        &self.levels[depth]
    }

    /// Push a chain at depth `from` down the tower to depth `to`.
    pub fn push_chain(
        &self,
        chain: &SimplicialChain,
        from: usize,
        to: usize,
    ) -> SimplicialChain {
        assert!(from <= to && to <= self.levels.len());
        let mut current = chain.clone();
        for depth in from..to {
            current = self.levels[depth].push_chain(&current);
        }
        current
    }
}
