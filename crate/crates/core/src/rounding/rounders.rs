use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{
    symmetric_eigen, truncation_order, DenseMatrix, DensityMatrix, Hamiltonian, SparseSymMatrix,
    DEFAULT_DENSE_CAP,
};
use crate::rng::{gaussian_vector, sign, stream_rng};

/// The Gaussian vector for rounding sample `index` under `seed`.
pub fn rounding_gaussian(n: usize, seed: u64, index: u64) -> Vec<f64> {
    gaussian_vector(&mut stream_rng(seed, index), n)
}

/// Sign rounding straight from a Hamiltonian: `x = sign(S_l g)` with `S_l`
/// the degree-`l` Taylor polynomial of `exp(−H/2)`.
///
/// The polynomial is applied to `g` by `l` products with `H`; the matrix
/// `S_l` is never formed. `H` is shifted by its upper spectral bound first,
/// which multiplies `exp(−H/2)` by a positive constant and so leaves every
/// sign alone, while making all Taylor terms nonnegative in the eigenbasis.
#[derive(Debug, Clone)]
pub struct TaylorRounder<'a> {
    a: &'a SparseSymMatrix,
    h: &'a Hamiltonian,
    hi: f64,
    degree: usize,
}

impl<'a> TaylorRounder<'a> {
    pub fn new(a: &'a SparseSymMatrix, h: &'a Hamiltonian, eps: f64) -> Result<Self> {
        h.check_dim(a)?;
        if !(eps > 0.0) {
            return Err(Error::InvalidConfig("eps must be positive"));
        }
        Ok(Self {
            a,
            h,
            hi: h.spectral_bounds().1,
            degree: rounding_order(h, eps),
        })
    }

    pub fn with_degree(a: &'a SparseSymMatrix, h: &'a Hamiltonian, degree: usize) -> Result<Self> {
        h.check_dim(a)?;
        Ok(Self {
            a,
            h,
            hi: h.spectral_bounds().1,
            degree,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `S_l g`, up to a positive factor.
    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        let n = g.len();
        let mut z = g.to_vec();
        let mut term = g.to_vec();
        let mut hx = vec![0.0; n];
        for k in 1..=self.degree {
            // term ← (hi·I − H) term / (2k)
            self.h.apply(self.a, &term, &mut hx);
            let c = 0.5 / k as f64;
            for (t, hv) in term.iter_mut().zip(&hx) {
                *t = c * (self.hi * *t - hv);
            }
            for (zi, ti) in z.iter_mut().zip(&term) {
                *zi += ti;
            }
            let big = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if big > 1e150 {
                let s = 1.0 / big;
                z.iter_mut().for_each(|v| *v *= s);
                term.iter_mut().for_each(|v| *v *= s);
            }
        }
        z
    }

    pub fn round_with(&self, g: &[f64]) -> Vec<i8> {
        self.apply(g).into_iter().map(sign).collect()
    }

    pub fn round(&self, seed: u64, index: u64) -> Vec<i8> {
        self.round_with(&rounding_gaussian(self.h.dim(), seed, index))
    }
}

/// Taylor degree for [`TaylorRounder`]: the smallest even `l` meeting both
/// [`truncation_order`] for `H/2` and the tail bound `Yˡ⁺¹/(l+1)! ≤ δ`, where
/// `Y` bounds the shifted argument and `δ = n^(−4 − 1/(2ε))`; capped at
/// `8 ln(n)/ε`.
pub fn rounding_order(h: &Hamiltonian, eps: f64) -> usize {
    let n = h.dim();
    let ln_n = (n as f64).ln();
    let log_target = -(4.0 + 1.0 / (2.0 * eps)) * ln_n;
    let (lo, hi) = h.spectral_bounds();
    let y = 0.5 * (hi - lo);

    let cap = even_ceil(8.0 * ln_n / eps).max(2);
    let base = truncation_order(
        0.5 * h.norm_bound(),
        n,
        log_target.exp().max(f64::MIN_POSITIVE),
    );
    let mut l = 0usize;
    if y > 0.0 {
        while l < cap && (l + 1) as f64 * y.ln() - ln_factorial(l + 1) > log_target {
            l += 2;
        }
    }
    base.max(l).min(cap)
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

fn even_ceil(x: f64) -> usize {
    let c = x.ceil() as usize;
    c + (c % 2)
}

/// Reference rounding from a density matrix: `x = sign(√ρ g)`.
///
/// Eigenvalues below `1e-10 · ‖ρ‖` are clipped to zero before the square
/// root is taken.
#[derive(Debug, Clone)]
pub struct SqrtRounder {
    root: DenseMatrix,
}

impl SqrtRounder {
    pub fn new(rho: &DensityMatrix) -> Result<Self> {
        Self::with_cap(rho, DEFAULT_DENSE_CAP)
    }

    pub fn with_cap(rho: &DensityMatrix, cap: usize) -> Result<Self> {
        let n = rho.dim();
        if n > cap {
            return Err(Error::DenseCapExceeded { n, cap });
        }
        let eig = symmetric_eigen(rho.matrix());
        let top = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = 1e-10 * top;
        let root = eig.reconstruct(|v| if v < floor { 0.0 } else { v.sqrt() });
        Ok(Self { root })
    }

    pub fn root(&self) -> &DenseMatrix {
        &self.root
    }

    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        self.root
            .matvec(g)
            .expect("gaussian has the state dimension")
    }

    pub fn round_with(&self, g: &[f64]) -> Vec<i8> {
        self.apply(g).into_iter().map(sign).collect()
    }

    pub fn round(&self, seed: u64, index: u64) -> Vec<i8> {
        self.round_with(&rounding_gaussian(self.root.dim(), seed, index))
    }
}

/// One Taylor rounding with sample index 0.
pub fn round_signs(a: &SparseSymMatrix, h: &Hamiltonian, eps: f64, seed: u64) -> Result<Vec<i8>> {
    Ok(TaylorRounder::new(a, h, eps)?.round(seed, 0))
}

/// One exact rounding with sample index 0.
pub fn round_exact(rho: &DensityMatrix, seed: u64) -> Result<Vec<i8>> {
    Ok(SqrtRounder::new(rho)?.round(seed, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::exact_gibbs;

    #[test]
    fn zero_hamiltonian_returns_signs_of_g() {
        let a = SparseSymMatrix::identity(6).unwrap();
        let h = Hamiltonian::zero(6, 1.0).unwrap();
        let g = rounding_gaussian(6, 4, 0);
        let want: Vec<i8> = g.iter().map(|&v| sign(v)).collect();
        assert_eq!(round_signs(&a, &h, 0.1, 4).unwrap(), want);
    }

    #[test]
    fn rank_one_state_rounds_to_plus_minus_x() {
        let x = [1.0, -1.0, -1.0, 1.0, 1.0];
        let rho = DensityMatrix::pure(&x).unwrap();
        for seed in 0..20 {
            let s = round_exact(&rho, seed).unwrap();
            let flip = s[0];
            for (si, xi) in s.iter().zip(&x) {
                assert_eq!(f64::from(*si), f64::from(flip) * xi);
            }
        }
    }

    #[test]
    fn taylor_matches_exact_square_root() {
        let a =
            SparseSymMatrix::from_entries(4, [(0, 1, 1.0), (1, 2, -1.0), (2, 3, 0.5), (0, 0, 0.2)])
                .unwrap();
        let h = Hamiltonian::from_parts(-6.0, vec![0.5, -1.0, 2.0, 0.0], 1.4).unwrap();
        let rho = exact_gibbs(&a, &h).unwrap();
        let taylor = TaylorRounder::new(&a, &h, 0.02).unwrap();
        let exact = SqrtRounder::new(&rho).unwrap();
        let g = rounding_gaussian(4, 1, 0);
        let unit = |v: Vec<f64>| {
            let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / s).collect::<Vec<_>>()
        };
        let zt = unit(taylor.apply(&g));
        let ze = unit(exact.apply(&g));
        for (t, e) in zt.iter().zip(&ze) {
            assert!((t - e).abs() < 1e-9, "{zt:?} vs {ze:?}");
        }
    }

    #[test]
    fn order_respects_cap() {
        let h = Hamiltonian::from_parts(50.0, vec![0.0; 8], 1.0).unwrap();
        let l = rounding_order(&h, 0.5);
        assert_eq!(l, even_ceil(8.0 * 8f64.ln() / 0.5));
        assert_eq!(l % 2, 0);
    }
}
