use crate::error::Result;
use crate::matrix::{
    operator_norm, spectral_norm_rect, CooMatrix, SparseSymMatrix, DEFAULT_NORM_TOL,
};

use super::brute::{brute_force_inf1, BRUTE_FORCE_CAP};

/// Norms of one matrix, with the `∞→1` norm bracketed by the column-norm
/// sandwich `col/√2 ≤ ‖A‖_{∞→1} ≤ 4·col`.
///
/// The lower end holds for every matrix. The upper end is a bound on
/// expectations for random matrices with independent entries and can fail
/// for structured ones (the all-ones matrix exceeds it for `n > 16`).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NormProfile {
    pub n: usize,
    /// Entrywise `ℓ₁` norm.
    pub ell1: f64,
    /// Sum of Euclidean column norms.
    pub col: f64,
    /// Spectral norm.
    pub op: f64,
    pub inf1_lower: f64,
    pub inf1_upper: f64,
    /// Exhaustive `∞→1` norm, for `n ≤ 24`.
    pub inf1_exact: Option<f64>,
}

fn finish(n: usize, ell1: f64, col: f64, op: f64, exact: Option<f64>) -> NormProfile {
    NormProfile {
        n,
        ell1,
        col,
        op,
        inf1_lower: col / core::f64::consts::SQRT_2,
        inf1_upper: 4.0 * col,
        inf1_exact: exact,
    }
}

pub fn norm_profile(a: &SparseSymMatrix, seed: u64) -> Result<NormProfile> {
    let n = a.dim();
    let op = operator_norm(a, DEFAULT_NORM_TOL, (10 * n).max(100), seed)?;
    let exact = if n <= BRUTE_FORCE_CAP {
        Some(brute_force_inf1(&CooMatrix::from_symmetric(a))?)
    } else {
        None
    };
    Ok(finish(n, a.ell1_norm(), a.column_norm_sum(), op, exact))
}

/// [`norm_profile`] for a general (non-symmetric) square or rectangular
/// matrix; `n` reports the column count.
pub fn norm_profile_rect(b: &CooMatrix, seed: u64) -> Result<NormProfile> {
    let n = b.cols();
    let op = spectral_norm_rect(b, DEFAULT_NORM_TOL, (10 * n).max(100), seed)?;
    let exact = if n <= BRUTE_FORCE_CAP {
        Some(brute_force_inf1(b)?)
    } else {
        None
    };
    Ok(finish(n, b.ell1_norm(), b.column_norm_sum(), op, exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{generate, InstanceSpec};

    #[test]
    fn chain_of_inequalities() {
        for seed in 0..5 {
            let a = generate(&InstanceSpec::gaussian(10, seed)).unwrap();
            let p = norm_profile(&a, seed).unwrap();
            let exact = p.inf1_exact.unwrap();
            assert!(p.ell1 >= p.op);
            assert!(p.inf1_lower <= exact && exact <= p.inf1_upper);
            assert!(exact <= (p.n as f64 * p.op * (1.0 + 1e-4)).min(p.ell1) + 1e-9);
        }
    }
}
