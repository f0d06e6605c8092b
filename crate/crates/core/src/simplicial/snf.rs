//! Smith normal form over the integers, with both change-of-basis pairs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::Mat;

/// Smith decomposition `d = u * a * v` with tracked inverses
/// (`a = uinv * d * vinv`), diagonal entries positive and each dividing
/// the next.
pub(crate) struct Smith {
    pub d: Mat,
    pub u: Mat,
    pub uinv: Mat,
    pub v: Mat,
    pub vinv: Mat,
    pub rank: usize,
}

/// Quotient minimizing the remainder magnitude (ties keep the truncated
/// quotient), so pivot magnitudes shrink by at least half each sweep.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if !r.is_zero() && r.magnitude() * 2u32 > b.magnitude() * 1u32 {
        let step = if r.sign() == b.sign() { 1 } else { -1 };
        q += step;
    }
    q
}

pub(crate) fn smith(a: &Mat) -> Smith {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = Mat::identity(m);
    let mut uinv = Mat::identity(m);
    let mut v = Mat::identity(n);
    let mut vinv = Mat::identity(n);

    // Row ops keep d = u*a*v by mirroring on u and appending the inverse
    // op to uinv; column ops mirror on v and prepend the inverse to vinv.
    macro_rules! row_swap {
        ($i:expr, $j:expr) => {{
            d.swap_rows($i, $j);
            u.swap_rows($i, $j);
            uinv.swap_cols($i, $j);
        }};
    }
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let k: BigInt = $k;
            d.add_row_multiple($dst, $src, &k);
            u.add_row_multiple($dst, $src, &k);
            uinv.add_col_multiple($src, $dst, &(-k));
        }};
    }
    macro_rules! row_negate {
        ($i:expr) => {{
            d.negate_row($i);
            u.negate_row($i);
            uinv.negate_col($i);
        }};
    }
    macro_rules! col_swap {
        ($i:expr, $j:expr) => {{
            d.swap_cols($i, $j);
            v.swap_cols($i, $j);
            vinv.swap_rows($i, $j);
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            let k: BigInt = $k;
            d.add_col_multiple($dst, $src, &k);
            v.add_col_multiple($dst, $src, &k);
            vinv.add_row_multiple($src, $dst, &(-k));
        }};
    }

    let mut t = 0;
    while t < m.min(n) {
        // Smallest-magnitude nonzero entry of the trailing block becomes
        // the pivot; (row, col) order breaks ties deterministically.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d.get(i, j).is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => d.get(i, j).magnitude() < d.get(pi, pj).magnitude(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        row_swap!(t, pi);
        col_swap!(t, pj);

        'reduce: loop {
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = div_rounded(d.get(i, t), d.get(t, t));
                row_add!(i, t, -q);
                if !d.get(i, t).is_zero() {
                    // Remainder is strictly smaller than the pivot.
                    row_swap!(t, i);
                    continue 'reduce;
                }
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = div_rounded(d.get(t, j), d.get(t, t));
                col_add!(j, t, -q);
                if !d.get(t, j).is_zero() {
                    col_swap!(t, j);
                    continue 'reduce;
                }
            }
            // Row and column are clear; enforce that the pivot divides the
            // rest of the block before moving on.
            let mut violation = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d.get(i, j).mod_floor(d.get(t, t)).is_zero() {
                        violation = Some(i);
                        break 'scan;
                    }
                }
            }
            match violation {
                Some(i) => {
                    // Folding the offending row into the pivot row lets the
                    // next sweep shrink the pivot.
                    row_add!(t, i, BigInt::from(1));
                    continue 'reduce;
                }
                None => break,
            }
        }

        if d.get(t, t).sign() == Sign::Minus {
            row_negate!(t);
        }
        t += 1;
    }

    let rank = t;
    debug_assert!({
        let mut ok = true;
        for i in 1..rank {
            ok &= d.get(i, i).mod_floor(d.get(i - 1, i - 1)).is_zero();
        }
        ok
    });
    Smith {
        d,
        u,
        uinv,
        v,
        vinv,
        rank,
    }
}

impl Smith {
    /// Positive diagonal entries `d_1 | d_2 | ...` up to the rank.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Basis of the integer kernel of the original matrix.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.cols())
            .map(|j| self.v.column(j))
            .collect()
    }

    /// One integer solution of `a x = c`, if any exists.
    pub fn solve(&self, c: &[BigInt]) -> Option<Vec<BigInt>> {
        let w = self.u.mul_vec(c);
        let mut y = vec![BigInt::zero(); self.v.rows()];
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let (q, r) = wi.div_rem(self.d.get(i, i));
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Mat {
        let mut out = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, BigInt::from(vals[i * cols + j]));
            }
        }
        out
    }

    fn check_decomposition(a: &Mat, s: &Smith) {
        assert_eq!(s.u.mul(a).mul(&s.v), s.d, "d != u a v");
        assert!(s.u.mul(&s.uinv).is_identity(), "uinv is not inverse of u");
        assert!(s.v.mul(&s.vinv).is_identity(), "vinv is not inverse of v");
        assert_eq!(s.uinv.mul(&s.d).mul(&s.vinv), *a, "a != uinv d vinv");
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero(), "off-diagonal residue");
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].mod_floor(&w[0]).is_zero(), "divisibility chain broken");
        }
        for d in &diag {
            assert!(d.is_positive(), "diagonal entry not positive");
        }
    }

    // --- reduction ---

    #[test]
    fn invariant_factors_of_a_two_by_two() {
        // gcd of entries is 1 and |det| = 2, so the factors are 1, 2.
        let a = m(2, 2, &[1, 2, 3, 4]);
        let s = smith(&a);
        check_decomposition(&a, &s);
        assert_eq!(s.rank, 2);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = m(2, 2, &[2, 0, 0, 3]);
        let s = smith(&a);
        check_decomposition(&a, &s);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rank_deficient_rectangular_matrix() {
        // Rows are multiples of (1, 2, 3).
        let a = m(3, 3, &[1, 2, 3, 2, 4, 6, -1, -2, -3]);
        let s = smith(&a);
        check_decomposition(&a, &s);
        assert_eq!(s.rank, 1);
        assert_eq!(s.kernel_basis().len(), 2);
        for k in s.kernel_basis() {
            assert!(a.mul_vec(&k).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn empty_shapes_are_handled() {
        let a = Mat::zeros(0, 3);
        let s = smith(&a);
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel_basis().len(), 3);
        let b = Mat::zeros(3, 0);
        let sb = smith(&b);
        assert_eq!(sb.rank, 0);
        assert!(sb.kernel_basis().is_empty());
    }

    #[test]
    fn larger_matrix_round_trips() {
        let a = m(
            3,
            4,
            &[6, 4, 2, 0, -4, 10, 8, 2, 2, -2, 12, 6],
        );
        let s = smith(&a);
        check_decomposition(&a, &s);
    }

    // --- solving ---

    #[test]
    fn solve_finds_integer_solutions_and_rejects_non_solutions() {
        let a = m(2, 2, &[2, 0, 0, 2]);
        let s = smith(&a);
        let c: Vec<BigInt> = [2, 4].iter().map(|&x| BigInt::from(x)).collect();
        let x = s.solve(&c).expect("solvable");
        assert_eq!(a.mul_vec(&x), c);
        let odd: Vec<BigInt> = [1, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert!(s.solve(&odd).is_none());
    }

    #[test]
    fn solve_detects_inconsistent_systems() {
        // x + y = 1 and 2x + 2y = 3 cannot both hold.
        let a = m(2, 2, &[1, 1, 2, 2]);
        let s = smith(&a);
        let c: Vec<BigInt> = [1, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert!(s.solve(&c).is_none());
        let ok: Vec<BigInt> = [1, 2].iter().map(|&x| BigInt::from(x)).collect();
        let x = s.solve(&ok).expect("consistent");
        assert_eq!(a.mul_vec(&x), ok);
    }

    #[test]
    fn rounded_division_minimizes_remainders() {
        let cases = [(7, 3, 2), (8, 3, 3), (-7, 3, -2), (-8, 3, -3), (7, -3, -2)];
        for (a, b, want) in cases {
            assert_eq!(
                div_rounded(&BigInt::from(a), &BigInt::from(b)),
                BigInt::from(want),
                "{a}/{b}"
            );
        }
        // Exact ties keep the truncated quotient.
        assert_eq!(div_rounded(&BigInt::from(3), &BigInt::from(2)), BigInt::from(1));
        assert_eq!(div_rounded(&BigInt::from(-3), &BigInt::from(2)), BigInt::from(-1));
    }
}
