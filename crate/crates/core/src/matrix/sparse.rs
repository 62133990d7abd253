use alloc::vec;
use alloc::vec::Vec;

use super::dense::DenseMatrix;
use crate::error::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Real symmetric matrix in coordinate form with a row-compressed index.
///
/// Only the upper triangle is stored in `entries`; `(i, j, v)` with `i <= j`
/// stands for both `A_ij` and `A_ji`. The compressed index holds the full
/// symmetric pattern so a row can be walked in `O(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    entries: Vec<(usize, usize, f64)>,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymMatrix {
    /// Builds a matrix from `(row, col, value)` triples, 0-based.
    ///
    /// Lower-triangle triples are folded onto the upper triangle. A pair given
    /// twice (in either orientation) is rejected.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut upper = Vec::new();
        for (r, c, v) in entries {
            if r >= n || c >= n {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows: n,
                    cols: n,
                });
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
            let (i, j) = if r <= c { (r, c) } else { (c, r) };
            upper.push((i, j, v));
        }
        upper.sort_by_key(|e| (e.0, e.1));
        for w in upper.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::DuplicateEntry {
                    row: w[0].0,
                    col: w[0].1,
                });
            }
        }
        Ok(Self::from_sorted_upper(n, upper))
    }

    fn from_sorted_upper(n: usize, entries: Vec<(usize, usize, f64)>) -> Self {
        let mut counts = vec![0usize; n];
        for &(i, j, _) in &entries {
            counts[i] += 1;
            if i != j {
                counts[j] += 1;
            }
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        row_ptr.push(0);
        for c in &counts {
            let last = *row_ptr.last().unwrap();
            row_ptr.push(last + c);
        }
        let total = row_ptr[n];
        let mut col_idx = vec![0usize; total];
        let mut values = vec![0.0; total];
        let mut fill = row_ptr[..n].to_vec();
        // Entries are sorted by (row, col), so for every row the lower-part
        // contributions (coming from earlier rows) land before the upper ones
        // and each row ends up column-sorted.
        for &(i, j, v) in &entries {
            col_idx[fill[i]] = j;
            values[fill[i]] = v;
            fill[i] += 1;
            if i != j {
                col_idx[fill[j]] = i;
                values[fill[j]] = v;
                fill[j] += 1;
            }
        }
        for r in 0..n {
            let (lo, hi) = (row_ptr[r], row_ptr[r + 1]);
            debug_assert!(col_idx[lo..hi].windows(2).all(|w| w[0] < w[1]));
        }
        Self {
            n,
            entries,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_entries(n, (0..n).map(|i| (i, i, 1.0)))
    }

    /// Takes the upper triangle of a dense matrix, dropping exact zeros.
    pub fn from_dense_upper(m: &DenseMatrix) -> Result<Self> {
        let n = m.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = m.get(i, j);
                if v != 0.0 {
                    entries.push((i, j, v));
                }
            }
        }
        Self::from_entries(n, entries)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Upper-triangle entries sorted by `(row, col)`.
    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    /// Number of stored nonzeros in the full symmetric pattern.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Maximum number of stored entries in any row.
    pub fn sparsity(&self) -> usize {
        (0..self.n)
            .map(|r| self.row_ptr[r + 1] - self.row_ptr[r])
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// `(col, value)` pairs of row `i`, column-sorted.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        self.col_idx[lo..hi]
            .iter()
            .copied()
            .zip(self.values[lo..hi].iter().copied())
    }

    pub fn diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.n];
        for &(i, j, v) in &self.entries {
            if i == j {
                d[i] = v;
            }
        }
        d
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
        match self.col_idx[lo..hi].binary_search(&j) {
            Ok(k) => self.values[lo + k],
            Err(_) => 0.0,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&(i, j, v)| (i, j, c * v))
            .collect();
        Self::from_sorted_upper(self.n, entries)
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y);
        Ok(y)
    }

    /// `y = A x` without dimension checks beyond slice indexing.
    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
            let mut acc = 0.0;
            for k in lo..hi {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *yi = acc;
        }
    }

    /// `out += alpha * A * m` for a dense square `m`, row by row.
    pub(crate) fn add_mul_dense(&self, alpha: f64, m: &DenseMatrix, out: &mut DenseMatrix) {
        let n = self.n;
        for i in 0..n {
            let (lo, hi) = (self.row_ptr[i], self.row_ptr[i + 1]);
            for k in lo..hi {
                let coef = alpha * self.values[k];
                let src = m.row(self.col_idx[k]);
                let dst = out.row_mut(i);
                for (o, s) in dst.iter_mut().zip(src) {
                    *o += coef * s;
                }
            }
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.n);
        for &(i, j, v) in &self.entries {
            m.set(i, j, v);
            m.set(j, i, v);
        }
        m
    }

    /// Sum of absolute values over the full symmetric matrix.
    pub fn ell1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    /// Sum of the Euclidean norms of the columns.
    pub fn column_norm_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).map(|(_, v)| v * v).sum::<f64>().sqrt())
            .sum()
    }

    /// `xᵀ A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for &(i, j, v) in &self.entries {
            if i == j {
                acc += v * x[i] * x[i];
            } else {
                acc += 2.0 * v * x[i] * x[j];
            }
        }
        acc
    }
}

/// General real matrix in coordinate form; used for rectangular inputs to the
/// block lift and for the `∞→1` norm oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct CooMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl CooMatrix {
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut out: Vec<(usize, usize, f64)> = Vec::new();
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
            out.push((r, c, v));
        }
        out.sort_by_key(|e| (e.0, e.1));
        for w in out.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::DuplicateEntry {
                    row: w[0].0,
                    col: w[0].1,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries: out,
        })
    }

    /// Row-major dense data, exact zeros dropped.
    pub fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        let entries = data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(k, &v)| (k / cols, k % cols, v));
        Self::from_entries(rows, cols, entries)
    }

    /// Full (both triangles) view of a symmetric matrix.
    pub fn from_symmetric(a: &SparseSymMatrix) -> Self {
        let n = a.dim();
        let mut entries = Vec::with_capacity(a.nnz());
        for i in 0..n {
            for (j, v) in a.row(i) {
                entries.push((i, j, v));
            }
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn to_row_major(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.rows * self.cols];
        for &(r, c, v) in &self.entries {
            d[r * self.cols + c] = v;
        }
        d
    }

    pub fn matvec(&self, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: y.len(),
            });
        }
        let mut out = vec![0.0; self.rows];
        for &(r, c, v) in &self.entries {
            out[r] += v * y[c];
        }
        Ok(out)
    }

    pub fn transpose_matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = vec![0.0; self.cols];
        for &(r, c, v) in &self.entries {
            out[c] += v * x[r];
        }
        Ok(out)
    }

    /// `xᵀ A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        self.entries.iter().map(|&(r, c, v)| v * x[r] * y[c]).sum()
    }

    pub fn ell1_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.2.abs()).sum()
    }

    pub fn column_norm_sum(&self) -> f64 {
        let mut sq = vec![0.0; self.cols];
        for &(_, c, v) in &self.entries {
            sq[c] += v * v;
        }
        sq.iter().map(|s| s.sqrt()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap2() -> SparseSymMatrix {
        SparseSymMatrix::from_entries(2, [(0, 1, 1.0)]).unwrap()
    }

    fn ones(n: usize) -> SparseSymMatrix {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i..n {
                e.push((i, j, 1.0));
            }
        }
        SparseSymMatrix::from_entries(n, e).unwrap()
    }

    #[test]
    fn matvec_identity() {
        let i2 = SparseSymMatrix::identity(2).unwrap();
        assert_eq!(i2.matvec(&[3.0, -1.0]).unwrap(), vec![3.0, -1.0]);
    }

    #[test]
    fn matvec_permutation() {
        assert_eq!(swap2().matvec(&[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn matvec_all_ones() {
        assert_eq!(ones(3).matvec(&[1.0; 3]).unwrap(), vec![3.0; 3]);
    }

    #[test]
    fn matvec_dimension_mismatch() {
        assert_eq!(
            swap2().matvec(&[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn lower_triangle_folds_and_duplicates_rejected() {
        let a = SparseSymMatrix::from_entries(3, [(2, 0, 0.5)]).unwrap();
        assert_eq!(a.entries(), &[(0, 2, 0.5)]);
        assert_eq!(a.get(2, 0), 0.5);
        let dup = SparseSymMatrix::from_entries(3, [(0, 2, 1.0), (2, 0, 1.0)]);
        assert_eq!(dup, Err(Error::DuplicateEntry { row: 0, col: 2 }));
    }

    #[test]
    fn rejects_out_of_range_and_nan() {
        assert!(matches!(
            SparseSymMatrix::from_entries(2, [(2, 0, 0.5)]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            SparseSymMatrix::from_entries(2, [(0, 0, f64::NAN)]),
            Err(Error::NonFinite { .. })
        ));
        assert_eq!(
            SparseSymMatrix::from_entries(0, []),
            Err(Error::EmptyDimension)
        );
    }

    #[test]
    fn sparsity_counts_symmetrized_rows() {
        let a = SparseSymMatrix::from_entries(4, [(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        assert_eq!(a.sparsity(), 3);
        assert_eq!(a.nnz(), 6);
    }
}
