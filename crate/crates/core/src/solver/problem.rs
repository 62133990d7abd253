use crate::error::{Error, Result};
use crate::matrix::{operator_norm, SparseSymMatrix, DEFAULT_NORM_TOL};

/// A MaxQP instance together with the spectral-norm estimate used to
/// normalize its objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    a: SparseSymMatrix,
    norm_a: f64,
}

impl Problem {
    /// Estimates `‖A‖` by power iteration seeded with `seed`.
    pub fn new(a: SparseSymMatrix, seed: u64) -> Result<Self> {
        let max_iter = (10 * a.dim()).max(100);
        let norm_a = operator_norm(&a, DEFAULT_NORM_TOL, max_iter, seed)?;
        Self::with_norm(a, norm_a)
    }

    /// Uses a caller-supplied `‖A‖`.
    pub fn with_norm(a: SparseSymMatrix, norm_a: f64) -> Result<Self> {
        if a.is_zero() || !(norm_a > 0.0) || !norm_a.is_finite() {
            return Err(Error::ZeroMatrix);
        }
        Ok(Self { a, norm_a })
    }

    pub fn matrix(&self) -> &SparseSymMatrix {
        &self.a
    }

    pub fn norm_a(&self) -> f64 {
        self.norm_a
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}
