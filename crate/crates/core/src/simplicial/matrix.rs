//! Dense integer matrices with the row/column operations Smith reduction needs.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major dense matrix over the integers.
///
/// Homology boundary matrices stay small (hundreds of rows), so a dense
/// representation keeps the elimination code simple and predictable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        assert_ne!(dst, src);
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(src, c) * k + self.get(dst, c);
            self.set(dst, c, v);
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        assert_ne!(dst, src);
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src) * k + self.get(r, dst);
            self.set(r, dst, v);
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self.get(i, c).clone();
            self.set(i, c, v);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let v = -self.get(r, j).clone();
            self.set(r, j, v);
        }
    }

    /// The submatrix consisting of rows `from..`.
    pub fn row_block(&self, from: usize) -> Mat {
        assert!(from <= self.rows);
        Mat {
            rows: self.rows - from,
            cols: self.cols,
            data: self.data[from * self.cols..].to_vec(),
        }
    }

    #[cfg(test)]
    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = i == j;
                if self.get(i, j).is_one() != want || (!want && !self.get(i, j).is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, vals: &[i64]) -> Mat {
        assert_eq!(vals.len(), rows * cols);
        let mut out = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, BigInt::from(vals[i * cols + j]));
            }
        }
        out
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = m(2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = m(3, 2, &[7, 8, 9, 10, 11, 12]);
        assert_eq!(a.mul(&b), m(2, 2, &[58, 64, 139, 154]));
    }

    #[test]
    fn row_and_column_operations_act_on_the_right_slices() {
        let mut a = m(2, 2, &[1, 2, 3, 4]);
        a.add_row_multiple(1, 0, &BigInt::from(-3));
        assert_eq!(a, m(2, 2, &[1, 2, 0, -2]));
        a.add_col_multiple(1, 0, &BigInt::from(-2));
        assert_eq!(a, m(2, 2, &[1, 0, 0, -2]));
        a.negate_row(1);
        a.swap_cols(0, 1);
        assert_eq!(a, m(2, 2, &[0, 1, 2, 0]));
    }

    #[test]
    fn identity_detection() {
        assert!(Mat::identity(3).is_identity());
        assert!(!m(2, 2, &[1, 1, 0, 1]).is_identity());
        let e = Mat::identity(4);
        assert!(e.mul(&e).is_identity());
    }

    #[test]
    fn matrix_vector_product() {
        let a = m(2, 3, &[1, 0, -1, 2, 1, 0]);
        let v: Vec<BigInt> = [3, 4, 5].iter().map(|&x| BigInt::from(x)).collect();
        let got = a.mul_vec(&v);
        assert_eq!(got, vec![BigInt::from(-2), BigInt::from(10)]);
    }
}
