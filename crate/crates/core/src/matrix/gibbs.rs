//! Gibbs states `exp(−H) / tr exp(−H)` for Hamiltonians of the form
//! `a·A/‖A‖ + Diag(d)`.

use alloc::vec::Vec;
use core::mem;

use super::dense::{DenseMatrix, DensityMatrix};
use super::eigen::symmetric_eigen;
use super::sparse::SparseSymMatrix;
use crate::error::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Largest dimension [`exact_gibbs`] will densify and diagonalize.
pub const DEFAULT_DENSE_CAP: usize = 2048;

/// `H = a · A/norm_a + Diag(d)`.
///
/// The matrix `A` itself is not owned; every method that needs it takes it
/// as an argument and checks the dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    a: f64,
    d: Vec<f64>,
    norm_a: f64,
}

impl Hamiltonian {
    pub fn zero(n: usize, norm_a: f64) -> Result<Self> {
        Self::from_parts(0.0, alloc::vec![0.0; n], norm_a)
    }

    pub fn from_parts(a: f64, d: Vec<f64>, norm_a: f64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !(norm_a > 0.0) || !norm_a.is_finite() {
            return Err(Error::ZeroMatrix);
        }
        if !a.is_finite() || d.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invariant(
                "non-finite Hamiltonian coefficient".into(),
            ));
        }
        Ok(Self { a, d, norm_a })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.d.len()
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    #[inline]
    pub fn norm_a(&self) -> f64 {
        self.norm_a
    }

    /// `|a| + max_i |d_i|`, an upper bound on `‖H‖`.
    pub fn norm_bound(&self) -> f64 {
        self.a.abs() + self.d.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Interval `[lo, hi]` containing the spectrum of `H`.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let (dmin, dmax) = self
            .d
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        (dmin - self.a.abs(), dmax + self.a.abs())
    }

    /// `a += delta`.
    pub fn add_objective(&mut self, delta: f64) {
        self.a += delta;
    }

    /// `d_i += delta` wherever `mask_i`.
    pub fn add_diagonal(&mut self, delta: f64, mask: &[bool]) {
        for (di, &m) in self.d.iter_mut().zip(mask) {
            if m {
                *di += delta;
            }
        }
    }

    /// `c · H`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            a: c * self.a,
            d: self.d.iter().map(|v| c * v).collect(),
            norm_a: self.norm_a,
        }
    }

    pub fn check_dim(&self, a: &SparseSymMatrix) -> Result<()> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        Ok(())
    }

    /// `y = H x`.
    pub fn apply(&self, a: &SparseSymMatrix, x: &[f64], y: &mut [f64]) {
        a.matvec_into(x, y);
        let c = self.a / self.norm_a;
        for ((yi, xi), di) in y.iter_mut().zip(x).zip(&self.d) {
            *yi = c * *yi + di * xi;
        }
    }

    pub fn to_dense(&self, a: &SparseSymMatrix) -> Result<DenseMatrix> {
        self.check_dim(a)?;
        let mut m = a.to_dense();
        m.scale(self.a / self.norm_a);
        for (i, di) in self.d.iter().enumerate() {
            m.set(i, i, m.get(i, i) + di);
        }
        Ok(m)
    }
}

/// Smallest even `l` with `(l+1)(ln(l+1) − 1) ≥ 2‖H‖ + ln n + ln(1/ε)`.
///
/// # Panics
///
/// If `norm_h` is negative or not finite, `n == 0`, or `eps` is not positive.
pub fn truncation_order(norm_h: f64, n: usize, eps: f64) -> usize {
    assert!(
        norm_h >= 0.0 && norm_h.is_finite(),
        "norm bound must be finite and >= 0"
    );
    assert!(n >= 1, "dimension must be positive");
    assert!(eps > 0.0, "accuracy must be positive");
    let rhs = 2.0 * norm_h + (n as f64).ln() - eps.ln();
    let mut l = 0usize;
    loop {
        let k = (l + 1) as f64;
        if k * (k.ln() - 1.0) >= rhs {
            return l;
        }
        l += 2;
    }
}

/// Number of squarings used by [`truncated_gibbs`] for `h`.
pub fn gibbs_squarings(h: &Hamiltonian) -> u32 {
    let (lo, hi) = h.spectral_bounds();
    let spread = hi - lo;
    if spread <= 1.0 {
        0
    } else {
        spread.log2().ceil() as u32
    }
}

/// Per-factor Taylor degree giving trace-distance accuracy `eps` in
/// [`truncated_gibbs`].
///
/// Each factor has argument norm at most 1 and is raised to the power
/// `m = 2^squarings`, so the factor needs relative accuracy `eps / m`.
pub fn gibbs_order(h: &Hamiltonian, eps: f64) -> usize {
    let m = (gibbs_squarings(h) as f64).exp2();
    truncation_order(1.0, h.dim(), eps / m)
}

/// Gibbs state of `h` from a degree-`l` Taylor polynomial.
///
/// `H` is first shifted by its upper spectral bound, so the polynomial is
/// evaluated on `Y = (hi·I − H)/m ⪰ 0` with `‖Y‖ ≤ 1` and `m = 2^j` chosen
/// from the spectral spread. The result is `T_l(Y)^m`, formed by `j`
/// squarings with a trace rescale after each one; the rescaling keeps
/// magnitudes bounded and the discarded scalars only move the (unreported)
/// log normalizer. For `‖H‖`-spread at most 1 this is exactly `T_l / tr T_l`
/// of the shifted Hamiltonian.
pub fn truncated_gibbs(a: &SparseSymMatrix, h: &Hamiltonian, l: usize) -> Result<DensityMatrix> {
    h.check_dim(a)?;
    if l % 2 == 1 {
        return Err(Error::InvalidConfig("truncation order must be even"));
    }
    let n = h.dim();
    let (_, hi) = h.spectral_bounds();
    let j = gibbs_squarings(h);
    let m = (j as f64).exp2();
    let alpha = -h.a / (m * h.norm_a);
    let shift: Vec<f64> = h.d.iter().map(|di| (hi - di) / m).collect();

    let mut sum = DenseMatrix::identity(n);
    let mut term = DenseMatrix::identity(n);
    let mut next = DenseMatrix::zeros(n);
    for k in 1..=l {
        for (i, &s) in shift.iter().enumerate() {
            let src = term.row(i);
            let dst = next.row_mut(i);
            // `next` is reused; the first write per row overwrites it.
            for (o, t) in dst.iter_mut().zip(src) {
                *o = s * t;
            }
        }
        if alpha != 0.0 {
            a.add_mul_dense(alpha, &term, &mut next);
        }
        next.scale(1.0 / k as f64);
        sum.axpy(1.0, &next);
        mem::swap(&mut term, &mut next);
    }
    sum.symmetrize();
    rescale_by_trace(&mut sum)?;
    for _ in 0..j {
        sum = sum.matmul(&sum)?;
        sum.symmetrize();
        rescale_by_trace(&mut sum)?;
    }
    DensityMatrix::normalized(sum)
}

fn rescale_by_trace(m: &mut DenseMatrix) -> Result<f64> {
    let tr = m.trace();
    if !(tr > 0.0) || !tr.is_finite() {
        return Err(Error::Invariant(alloc::format!(
            "truncated exponential lost positivity (trace {tr})"
        )));
    }
    m.scale(1.0 / tr);
    Ok(tr.ln())
}

/// Gibbs state of `h` by full eigendecomposition.
pub fn exact_gibbs(a: &SparseSymMatrix, h: &Hamiltonian) -> Result<DensityMatrix> {
    exact_gibbs_with_log_partition(a, h, DEFAULT_DENSE_CAP).map(|(rho, _)| rho)
}

/// Gibbs state together with `ln tr exp(−H)`, for `n ≤ cap`.
pub fn exact_gibbs_with_log_partition(
    a: &SparseSymMatrix,
    h: &Hamiltonian,
    cap: usize,
) -> Result<(DensityMatrix, f64)> {
    let n = h.dim();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let eig = symmetric_eigen(&h.to_dense(a)?);
    let lmin = eig.values.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let z: f64 = eig.values.iter().map(|&v| (lmin - v).exp()).sum();
    let rho = eig.reconstruct(|v| (lmin - v).exp() / z);
    let log_z = z.ln() - lmin;
    Ok((DensityMatrix::normalized(rho)?, log_z))
}

/// `Σ_ij A_ij ρ_ij`.
pub fn trace_product(a: &SparseSymMatrix, rho: &DensityMatrix) -> Result<f64> {
    trace_product_dense(a, rho.matrix())
}

fn trace_product_dense(a: &SparseSymMatrix, m: &DenseMatrix) -> Result<f64> {
    if a.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: m.dim(),
        });
    }
    let mut acc = 0.0;
    for &(i, j, v) in a.entries() {
        if i == j {
            acc += v * m.get(i, i);
        } else {
            acc += v * (m.get(i, j) + m.get(j, i));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::trace_distance;
    use alloc::vec;

    fn diag_h(d: &[f64]) -> (SparseSymMatrix, Hamiltonian) {
        let n = d.len();
        let a = SparseSymMatrix::identity(n).unwrap();
        (a, Hamiltonian::from_parts(0.0, d.to_vec(), 1.0).unwrap())
    }

    #[test]
    fn truncation_order_examples() {
        assert_eq!(truncation_order(0.0, 2, 1.0), 4);
        assert_eq!(truncation_order(5.0, 16, 0.1), 10);
        assert_eq!(truncation_order(0.0, 1, 1.0), 2);
    }

    #[test]
    fn zero_hamiltonian_gives_maximally_mixed() {
        let (a, h) = diag_h(&[0.0; 3]);
        for l in [0, 2, 6] {
            let rho = truncated_gibbs(&a, &h, l).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let want = if i == j { 1.0 / 3.0 } else { 0.0 };
                    assert!((rho.get(i, j) - want).abs() < 1e-15);
                }
            }
        }
        let rho = exact_gibbs(&a, &h).unwrap();
        assert!((rho.get(1, 1) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn odd_order_rejected() {
        let (a, h) = diag_h(&[0.0; 2]);
        assert!(truncated_gibbs(&a, &h, 3).is_err());
    }

    #[test]
    fn diagonal_twenty() {
        let (a, h) = diag_h(&[0.0, 20.0]);
        let l = truncation_order(20.0, 2, 1e-3);
        let rho = truncated_gibbs(&a, &h, l).unwrap();
        let r = (-20.0f64).exp();
        assert!((rho.get(0, 0) - 1.0 / (1.0 + r)).abs() < 1e-9);
        assert!((rho.get(1, 1) - r / (1.0 + r)).abs() < 1e-9);
        assert_eq!(rho.get(0, 1), 0.0);
    }

    #[test]
    fn exact_diag_ln2() {
        let (a, h) = diag_h(&[core::f64::consts::LN_2, 0.0]);
        let rho = exact_gibbs(&a, &h).unwrap();
        assert!((rho.get(0, 0) - 1.0 / 3.0).abs() < 1e-14);
        assert!((rho.get(1, 1) - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn large_spread_matches_exact() {
        let a = SparseSymMatrix::from_entries(3, [(0, 1, 1.0), (1, 2, -0.5), (0, 0, 0.3)]).unwrap();
        let h = Hamiltonian::from_parts(-40.0, vec![3.0, -7.0, 12.0], 1.2).unwrap();
        let exact = exact_gibbs(&a, &h).unwrap();
        let approx = truncated_gibbs(&a, &h, gibbs_order(&h, 1e-8)).unwrap();
        assert!(trace_distance(exact.matrix(), approx.matrix()) < 1e-8);
    }

    #[test]
    fn trace_product_examples() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        let j2 = SparseSymMatrix::from_entries(2, [(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0)]).unwrap();
        assert!((trace_product(&j2, &rho).unwrap() - 1.0).abs() < 1e-15);
        let swap = SparseSymMatrix::from_entries(2, [(0, 1, 1.0)]).unwrap();
        let plus = DensityMatrix::pure(&[1.0, 1.0]).unwrap();
        assert!((trace_product(&swap, &plus).unwrap() - 1.0).abs() < 1e-15);
        let i3 = SparseSymMatrix::identity(3).unwrap();
        assert!(trace_product(&i3, &rho).is_err());
    }
}
