//! Integral simplicial homology computed from Smith normal forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{SimplicialChain, SimplicialComplex};
use super::matrix::Mat;
use super::snf::smith;

/// A homology group in one degree: free rank, invariant factors of the
/// torsion part (each dividing the next), and cycles generating the free
/// part modulo boundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Vec<SimplicialChain>,
}

/// Integral homology of the complex in degree `k`.
pub fn homology(complex: &SimplicialComplex, k: usize) -> HomologyGroup {
    let n_k = complex.simplex_count(k);
    if n_k == 0 {
        return HomologyGroup {
            degree: k,
            betti: 0,
            torsion: Vec::new(),
            generators: Vec::new(),
        };
    }
    let a = complex.boundary_matrix(k);
    let b = complex.boundary_matrix(k + 1);
    let sa = smith(&a);
    let cycle_rank = n_k - sa.rank;

    // Express incoming boundaries in kernel coordinates: the first
    // `rank(a)` rows of `vinv * b` vanish because the composite boundary
    // map is zero, and the rest give the inclusion of boundaries into
    // the cycle lattice.
    let c = sa.vinv.mul(&b);
    for i in 0..sa.rank {
        for j in 0..c.cols() {
            assert!(
                c.get(i, j).is_zero(),
                "boundary composite failed to vanish"
            );
        }
    }
    let m = c.row_block(sa.rank);
    let sm = smith(&m);

    let betti = cycle_rank - sm.rank;
    let torsion: Vec<BigInt> = sm
        .diagonal()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();

    // Kernel basis as a matrix, then re-express the quotient's free
    // generators (columns of uinv past the rank) in chain coordinates.
    let kernel = Mat::from_columns(n_k, &sa.kernel_basis());
    let mut generators = Vec::with_capacity(betti);
    for j in sm.rank..cycle_rank {
        let coords = sm.uinv.column(j);
        let chain = kernel.mul_vec(&coords);
        generators.push(SimplicialChain::from_dense(k, &chain));
    }

    HomologyGroup {
        degree: k,
        betti,
        torsion,
        generators,
    }
}

/// Betti number over the rationals (torsion discarded); agrees with the
/// free rank of the integral group.
pub fn betti_rational(complex: &SimplicialComplex, k: usize) -> usize {
    let n_k = complex.simplex_count(k);
    if n_k == 0 {
        return 0;
    }
    let rank_a = smith(&complex.boundary_matrix(k)).rank;
    let rank_b = smith(&complex.boundary_matrix(k + 1)).rank;
    n_k - rank_a - rank_b
}
