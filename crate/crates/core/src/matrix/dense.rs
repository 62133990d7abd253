use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub const DEFAULT_TRACE_TOL: f64 = 1e-10;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scale(&mut self, c: f64) {
        self.data.iter_mut().for_each(|v| *v *= c);
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: f64, other: &DenseMatrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn add_to_diagonal(&mut self, c: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += c;
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    /// Replaces `M` by `(M + Mᵀ) / 2`.
    pub fn symmetrize(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (self.data[i * n + j] + self.data[j * n + i]);
                self.data[i * n + j] = v;
                self.data[j * n + i] = v;
            }
        }
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.n;
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                m = m.max((self.data[i * n + j] - self.data[j * n + i]).abs());
            }
        }
        m
    }

    /// `self · other`, i-k-j order so the inner loop streams rows.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let src = &other.data[k * n..(k + 1) * n];
                for (o, s) in dst.iter_mut().zip(src) {
                    *o += aik * s;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Frobenius inner product `Σ_ij M_ij N_ij`.
    pub fn frobenius_dot(&self, other: &DenseMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }
}

/// Unit-trace symmetric positive semidefinite matrix.
///
/// Construction checks symmetry and trace against `trace_tol`; the
/// eigenvalue condition is checked on demand by [`DensityMatrix::min_eigenvalue`]
/// since it costs a full eigendecomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    values: DenseMatrix,
    trace_tol: f64,
}

impl DensityMatrix {
    pub fn new(values: DenseMatrix, trace_tol: f64) -> Result<Self> {
        if values.dim() == 0 {
            return Err(Error::EmptyDimension);
        }
        if values.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::Invariant(
                "density matrix has non-finite entries".into(),
            ));
        }
        let asym = values.max_asymmetry();
        if asym > trace_tol {
            return Err(Error::Invariant(alloc::format!(
                "density matrix asymmetric by {asym:e}"
            )));
        }
        let tr = values.trace();
        if (tr - 1.0).abs() > trace_tol {
            return Err(Error::Invariant(alloc::format!(
                "density matrix trace {tr} differs from 1"
            )));
        }
        Ok(Self { values, trace_tol })
    }

    /// Normalizes `m` to unit trace and symmetrizes it first.
    pub fn normalized(mut m: DenseMatrix) -> Result<Self> {
        m.symmetrize();
        let tr = m.trace();
        if !(tr > 0.0) || !tr.is_finite() {
            return Err(Error::Invariant(alloc::format!(
                "cannot normalize matrix with trace {tr}"
            )));
        }
        m.scale(1.0 / tr);
        Self::new(m, DEFAULT_TRACE_TOL)
    }

    /// `I / n`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut m = DenseMatrix::identity(n);
        m.scale(1.0 / n as f64);
        Self::new(m, DEFAULT_TRACE_TOL)
    }

    /// `x xᵀ / ‖x‖²`.
    pub fn pure(x: &[f64]) -> Result<Self> {
        let n = x.len();
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, x[i] * x[j] / norm2);
            }
        }
        Self::new(m, DEFAULT_TRACE_TOL)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    pub fn trace_tol(&self) -> f64 {
        self.trace_tol
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.values
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.values
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.values.diagonal()
    }

    /// `Σ_i |ρ_ii − 1/n|`.
    pub fn diag_l1_deviation(&self) -> f64 {
        let u = 1.0 / self.dim() as f64;
        (0..self.dim()).map(|i| (self.get(i, i) - u).abs()).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        super::eigen::symmetric_eigen(&self.values)
            .values
            .iter()
            .fold(f64::INFINITY, |m, &v| m.min(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_small() {
        let a = DenseMatrix::from_row_major(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = DenseMatrix::from_row_major(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(a.matmul(&b).unwrap().as_slice(), &[2.0, 1.0, 4.0, 3.0]);
    }

    #[test]
    fn density_checks_trace() {
        assert!(DensityMatrix::new(DenseMatrix::identity(2), 1e-10).is_err());
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        assert_eq!(rho.diag_l1_deviation(), 0.0);
    }

    #[test]
    fn pure_state_deviation() {
        let rho = DensityMatrix::pure(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((rho.diag_l1_deviation() - 1.5).abs() < 1e-15);
    }
}
