use alloc::vec;
use alloc::vec::Vec;

use super::eigen::symmetric_eigen;
use super::sparse::{CooMatrix, SparseSymMatrix};
use crate::error::{Error, Result};
use crate::rng::{gaussian_vector, stream_rng};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

pub const DEFAULT_NORM_TOL: f64 = 1e-4;

/// Largest dimension at which a stalled power iteration falls back to a full
/// eigendecomposition.
pub const NORM_DENSE_FALLBACK: usize = 512;

/// Spectral norm `‖A‖` by power iteration from a seeded Gaussian start.
///
/// The iterate estimate `‖A x‖` with `‖x‖ = 1` never decreases, so the
/// returned value is a lower bound up to rounding. Iteration stops once both
/// the last increment and an Aitken-style extrapolation of the remaining
/// increments fall under `tol · estimate / 2`. A start landing in the kernel
/// is redrawn from the next stream.
///
/// Nearly degenerate top eigenvalues (common for small sign matrices, whose
/// spectra come in close `±λ` pairs) can stall the iteration. When
/// `max_iter` runs out and `n ≤ NORM_DENSE_FALLBACK`, the exact value from a
/// dense eigendecomposition is returned instead of an error.
pub fn operator_norm(a: &SparseSymMatrix, tol: f64, max_iter: usize, seed: u64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig("norm tolerance must be positive"));
    }
    if a.is_zero() {
        return Ok(0.0);
    }
    let n = a.dim();
    match power_iteration(n, tol, max_iter, seed, |x, y| a.matvec_into(x, y)) {
        Err(Error::NoConvergence { .. }) if n <= NORM_DENSE_FALLBACK => {
            Ok(symmetric_eigen(&a.to_dense())
                .values
                .iter()
                .fold(0.0, |m, v| m.max(v.abs())))
        }
        other => other,
    }
}

/// Largest singular value of a general matrix, by power iteration on `AᵀA`.
pub fn spectral_norm_rect(a: &CooMatrix, tol: f64, max_iter: usize, seed: u64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig("norm tolerance must be positive"));
    }
    if a.entries().iter().all(|e| e.2 == 0.0) {
        return Ok(0.0);
    }
    // The Gram operator has norm σ², so halve the relative tolerance.
    let g = power_iteration(a.cols(), tol, max_iter, seed, |x, y| {
        let ax = a.matvec(x).expect("dimension checked");
        let atax = a.transpose_matvec(&ax).expect("dimension checked");
        y.copy_from_slice(&atax);
    })?;
    Ok(g.sqrt())
}

fn power_iteration<F>(n: usize, tol: f64, max_iter: usize, seed: u64, mut apply: F) -> Result<f64>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let max_iter = max_iter.max(2);
    let mut stream = 0u64;
    let mut x = unit_start(n, seed, stream);
    let mut y = vec![0.0; n];
    let mut est = 0.0f64;
    let mut prev_delta = f64::INFINITY;
    for _ in 0..max_iter {
        apply(&x, &mut y);
        let ny = norm2(&y);
        if ny == 0.0 {
            stream += 1;
            x = unit_start(n, seed, stream);
            prev_delta = f64::INFINITY;
            continue;
        }
        let delta = (ny - est).max(0.0);
        let new_est = est.max(ny);
        let tail = if delta < prev_delta && prev_delta.is_finite() {
            let r = delta / prev_delta;
            delta * r / (1.0 - r)
        } else {
            f64::INFINITY
        };
        est = new_est;
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / ny;
        }
        let budget = 0.5 * tol * est;
        if delta <= budget && (tail <= budget || delta == 0.0) {
            return Ok(est);
        }
        prev_delta = delta;
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        estimate: est,
    })
}

fn unit_start(n: usize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream);
    loop {
        let mut g = gaussian_vector(&mut rng, n);
        let s = norm2(&g);
        if s > 0.0 {
            g.iter_mut().for_each(|v| *v /= s);
            return g;
        }
    }
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(entries: &[(usize, usize, f64)], n: usize) -> f64 {
        let a = SparseSymMatrix::from_entries(n, entries.iter().copied()).unwrap();
        operator_norm(&a, 1e-4, 10 * n, 7).unwrap()
    }

    #[test]
    fn stalled_iteration_falls_back_to_exact_value() {
        let a =
            SparseSymMatrix::from_entries(3, [(0, 0, 1.0), (1, 1, -0.999), (2, 2, 0.998)]).unwrap();
        assert_eq!(operator_norm(&a, 1e-12, 3, 0).unwrap(), 1.0);
    }

    #[test]
    fn identity_has_norm_one() {
        let e: Vec<_> = (0..4).map(|i| (i, i, 1.0)).collect();
        assert!((norm(&e, 4) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn all_ones_two() {
        assert!((norm(&[(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0)], 2) - 2.0).abs() < 2e-4);
    }

    #[test]
    fn swap_has_norm_one() {
        assert!((norm(&[(0, 1, 1.0)], 2) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn zero_matrix_is_zero() {
        let a = SparseSymMatrix::from_entries(3, [(0, 1, 0.0)]).unwrap();
        assert_eq!(operator_norm(&a, 1e-4, 30, 1).unwrap(), 0.0);
    }

    #[test]
    fn rectangular_identity() {
        let a = CooMatrix::from_entries(2, 2, [(0, 0, 1.0), (1, 1, 1.0)]).unwrap();
        assert!((spectral_norm_rect(&a, 1e-6, 100, 3).unwrap() - 1.0).abs() < 1e-6);
    }
}
