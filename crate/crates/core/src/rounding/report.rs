use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::lift::LiftedMatrix;
use super::rounders::{SqrtRounder, TaylorRounder};
use crate::error::{Error, Result};
use crate::matrix::{symmetric_eigen, DensityMatrix, Hamiltonian, SparseSymMatrix};

/// Largest dimension at which a PSD claim is checked by eigendecomposition.
pub const PSD_CHECK_CAP: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RoundingMode {
    /// `⟨x, Ax⟩` for PSD `A`.
    Psd,
    /// `⟨x, By⟩` read off the lift of `B`.
    Lifted,
}

/// What the rounding acts on.
#[derive(Debug, Clone, Copy)]
pub enum RoundingTarget<'a> {
    Psd(&'a SparseSymMatrix),
    Lifted(&'a LiftedMatrix),
}

impl<'a> RoundingTarget<'a> {
    pub fn mode(&self) -> RoundingMode {
        match self {
            RoundingTarget::Psd(_) => RoundingMode::Psd,
            RoundingTarget::Lifted(_) => RoundingMode::Lifted,
        }
    }

    /// The symmetric matrix the solver ran on.
    pub fn solved_matrix(&self) -> &'a SparseSymMatrix {
        match self {
            RoundingTarget::Psd(a) => a,
            RoundingTarget::Lifted(l) => &l.lifted,
        }
    }

    /// Quadratic value of one sign vector.
    pub fn value(&self, signs: &[i8]) -> f64 {
        let z: Vec<f64> = signs.iter().map(|&s| f64::from(s)).collect();
        match self {
            RoundingTarget::Psd(a) => a.quadratic_form(&z),
            RoundingTarget::Lifted(l) => l.split_value(&z),
        }
    }
}

/// Where sign vectors come from.
#[derive(Debug, Clone, Copy)]
pub enum RoundingSource<'a> {
    /// Truncated-Taylor rounding from the solver Hamiltonian.
    Hamiltonian { h: &'a Hamiltonian, eps: f64 },
    /// Exact square-root rounding from a state.
    Density(&'a DensityMatrix),
}

/// Prepared sampler: Taylor or square-root rounding on a target.
pub enum Sampler<'a> {
    Taylor(TaylorRounder<'a>),
    Sqrt(SqrtRounder),
}

impl Sampler<'_> {
    pub fn round(&self, seed: u64, index: u64) -> Vec<i8> {
        match self {
            Sampler::Taylor(t) => t.round(seed, index),
            Sampler::Sqrt(s) => s.round(seed, index),
        }
    }

    /// Taylor degree, or 0 for exact rounding.
    pub fn degree(&self) -> usize {
        match self {
            Sampler::Taylor(t) => t.degree(),
            Sampler::Sqrt(_) => 0,
        }
    }
}

/// Validates the target against the source and prepares a sampler.
pub fn prepare_sampler<'a>(
    target: RoundingTarget<'a>,
    source: RoundingSource<'a>,
) -> Result<Sampler<'a>> {
    let dim = match source {
        RoundingSource::Hamiltonian { h, .. } => h.dim(),
        RoundingSource::Density(rho) => rho.dim(),
    };
    let a = target.solved_matrix();
    if dim != a.dim() {
        return Err(match target {
            RoundingTarget::Lifted(_) => {
                Error::ModeMismatch("lifted rounding needs a solution of the lifted matrix")
            }
            RoundingTarget::Psd(_) => Error::DimensionMismatch {
                expected: a.dim(),
                found: dim,
            },
        });
    }
    if let RoundingTarget::Psd(a) = target {
        if a.dim() <= PSD_CHECK_CAP {
            let eig = symmetric_eigen(&a.to_dense());
            let top = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let min = eig.values.iter().fold(f64::INFINITY, |m, &v| m.min(v));
            if min < -1e-9 * top.max(1.0) {
                return Err(Error::ModeMismatch(
                    "psd rounding on a matrix that is not PSD",
                ));
            }
        }
    }
    Ok(match source {
        RoundingSource::Hamiltonian { h, eps } => Sampler::Taylor(TaylorRounder::new(a, h, eps)?),
        RoundingSource::Density(rho) => Sampler::Sqrt(SqrtRounder::new(rho)?),
    })
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RoundingReport {
    pub mode: RoundingMode,
    pub samples: usize,
    /// Per sample, the full sign vector; in lifted mode `x` then `y`.
    pub sign_vectors: Vec<Vec<i8>>,
    pub values: Vec<f64>,
    pub mean_value: f64,
    /// Relaxation value in the units of `values`.
    pub sdp_value_abs: f64,
    pub ratio: f64,
    pub truncation_order_used: usize,
    pub seed: u64,
}

impl RoundingReport {
    pub fn from_samples(
        mode: RoundingMode,
        seed: u64,
        truncation_order_used: usize,
        sdp_value_abs: f64,
        sign_vectors: Vec<Vec<i8>>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroSamples);
        }
        let mean_value = values.iter().sum::<f64>() / values.len() as f64;
        let ratio = if sdp_value_abs != 0.0 {
            mean_value / sdp_value_abs
        } else {
            f64::NAN
        };
        Ok(Self {
            mode,
            samples: values.len(),
            sign_vectors,
            values,
            mean_value,
            sdp_value_abs,
            ratio,
            truncation_order_used,
            seed,
        })
    }

    /// Sample standard deviation of the values.
    pub fn std_dev(&self) -> f64 {
        let m = self.values.len();
        if m < 2 {
            return 0.0;
        }
        let var = self
            .values
            .iter()
            .map(|v| (v - self.mean_value).powi(2))
            .sum::<f64>()
            / (m - 1) as f64;
        var.sqrt()
    }

    /// Normal-approximation two-sided 95% interval for the mean value.
    pub fn mean_ci95(&self) -> (f64, f64) {
        let half = 1.96 * self.std_dev() / (self.values.len() as f64).sqrt();
        (self.mean_value - half, self.mean_value + half)
    }

    /// One-sided 95% upper confidence bound on the mean ratio.
    pub fn ratio_upper95(&self) -> f64 {
        let half = 1.645 * self.std_dev() / (self.values.len() as f64).sqrt();
        (self.mean_value + half) / self.sdp_value_abs
    }
}

/// Draws `samples` independent roundings and reports their values.
///
/// `solver_value_abs` is the relaxation value reported by the solver on the
/// solved matrix. In lifted mode the solver ran on the lift, whose value is
/// twice that of `⟨x, By⟩`, so it is halved for the ratio.
pub fn estimate_value(
    target: RoundingTarget<'_>,
    source: RoundingSource<'_>,
    samples: usize,
    seed: u64,
    solver_value_abs: f64,
) -> Result<RoundingReport> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let sampler = prepare_sampler(target, source)?;
    let mut signs = Vec::with_capacity(samples);
    let mut values = Vec::with_capacity(samples);
    for k in 0..samples {
        let s = sampler.round(seed, k as u64);
        values.push(target.value(&s));
        signs.push(s);
    }
    RoundingReport::from_samples(
        target.mode(),
        seed,
        sampler.degree(),
        sdp_units(target.mode(), solver_value_abs),
        signs,
        values,
    )
}

/// Converts a solver value on the solved matrix to the units of
/// [`RoundingTarget::value`].
pub fn sdp_units(mode: RoundingMode, solver_value_abs: f64) -> f64 {
    match mode {
        RoundingMode::Psd => solver_value_abs,
        RoundingMode::Lifted => 0.5 * solver_value_abs,
    }
}
