//! Separation oracles for the diagonal constraints and the objective level.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::config::SolverConfig;
use super::problem::Problem;
use crate::error::Result;
use crate::matrix::{trace_product, DensityMatrix};
use crate::rng::stream_rng;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Hyperplane returned by a rejecting oracle. Both kinds have `‖P‖ ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separator {
    /// `P = sign · A/‖A‖`.
    Objective { sign: i8 },
    /// `P = Σ_{i : mask_i} |i⟩⟨i|`.
    Diagonal { mask: Vec<bool> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Accept,
    Separate(Separator),
}

impl OracleVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, OracleVerdict::Accept)
    }
}

/// `tr(Aρ) / ‖A‖`.
pub fn objective_value(problem: &Problem, rho: &DensityMatrix) -> Result<f64> {
    Ok(trace_product(problem.matrix(), rho)? / problem.norm_a())
}

/// Accepts iff `tr(Aρ)/‖A‖ ≥ λ − ε`, otherwise separates with `−A/‖A‖`.
pub fn objective_oracle(
    rho: &DensityMatrix,
    problem: &Problem,
    lambda: f64,
    eps: f64,
) -> Result<OracleVerdict> {
    let v = objective_value(problem, rho)?;
    Ok(objective_verdict(v, lambda - eps))
}

fn objective_verdict(value: f64, threshold: f64) -> OracleVerdict {
    if value >= threshold {
        OracleVerdict::Accept
    } else {
        OracleVerdict::Separate(Separator::Objective { sign: -1 })
    }
}

/// Accepts iff `Σ_i |ρ_ii − 1/n| ≤ ε`, otherwise separates with the
/// projector onto the over-weighted coordinates.
pub fn diagonal_oracle(rho: &DensityMatrix, eps: f64) -> OracleVerdict {
    diagonal_verdict(&rho.diagonal(), eps)
}

fn diagonal_verdict(p: &[f64], threshold: f64) -> OracleVerdict {
    let u = 1.0 / p.len() as f64;
    let dev: f64 = p.iter().map(|&v| (v - u).abs()).sum();
    if dev <= threshold {
        OracleVerdict::Accept
    } else {
        OracleVerdict::Separate(Separator::Diagonal {
            mask: p.iter().map(|&v| v > u).collect(),
        })
    }
}

/// `⌈sample_factor · n / ε²⌉`.
pub fn shot_count(n: usize, eps: f64, sample_factor: f64) -> u64 {
    (sample_factor * n as f64 / (eps * eps)).ceil() as u64
}

// Random streams: the diagonal and objective oracles of query `call` never
// share a stream with each other or with other calls.
fn diagonal_stream(call: u64) -> u64 {
    2 * call
}

fn objective_stream(call: u64) -> u64 {
    2 * call + 1
}

/// Diagonal oracle from simulated computational-basis measurements.
///
/// Draws `N` outcomes from the categorical distribution `diag(ρ)` (negative
/// entries clipped, then renormalized), forms the empirical frequencies `p̂`
/// and accepts iff `Σ_i |p̂_i − 1/n| ≤ ε/2`. Outcome counts are generated
/// as a multinomial through successive conditional binomials, which has the
/// same law as `N` independent draws. The result depends only on
/// `cfg.seed` and `call`.
pub fn sampled_diagonal_oracle(
    rho: &DensityMatrix,
    eps: f64,
    cfg: &SolverConfig,
    call: u64,
) -> OracleVerdict {
    let n = rho.dim();
    let shots = shot_count(n, eps, cfg.sample_factor);
    let mut probs: Vec<f64> = rho.diagonal().into_iter().map(|v| v.max(0.0)).collect();
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|v| *v /= total);

    let mut rng = stream_rng(cfg.seed, diagonal_stream(call));
    let mut counts = vec![0u64; n];
    let mut left = shots;
    let mut mass = 1.0;
    for i in 0..n {
        if left == 0 {
            break;
        }
        if i + 1 == n {
            counts[i] = left;
            break;
        }
        let p = if mass > 0.0 {
            (probs[i] / mass).clamp(0.0, 1.0)
        } else {
            1.0
        };
        let k = Binomial::new(left, p)
            .expect("probability clamped to [0, 1]")
            .sample(&mut rng);
        counts[i] = k;
        left -= k;
        mass -= probs[i];
    }
    let phat: Vec<f64> = counts.iter().map(|&c| c as f64 / shots as f64).collect();
    diagonal_verdict(&phat, eps / 2.0)
}

/// Objective oracle reading `tr(Aρ)/‖A‖ + η` with `η ~ U[−ε/2, ε/2)` and
/// accepting iff the reading is at least `λ − ε/2`.
pub fn sampled_objective_oracle(
    rho: &DensityMatrix,
    problem: &Problem,
    lambda: f64,
    eps: f64,
    cfg: &SolverConfig,
    call: u64,
) -> Result<OracleVerdict> {
    let v = objective_value(problem, rho)? + objective_noise(eps, cfg.seed, call);
    Ok(objective_verdict(v, lambda - eps / 2.0))
}

/// The noise term of [`sampled_objective_oracle`] for query `call`.
pub fn objective_noise(eps: f64, seed: u64, call: u64) -> f64 {
    let mut rng = stream_rng(seed, objective_stream(call));
    rng.random_range(-eps / 2.0..eps / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseSymMatrix;

    fn problem(entries: &[(usize, usize, f64)], n: usize) -> Problem {
        let a = SparseSymMatrix::from_entries(n, entries.iter().copied()).unwrap();
        Problem::new(a, 1).unwrap()
    }

    #[test]
    fn objective_examples() {
        let id = problem(&[(0, 0, 1.0), (1, 1, 1.0), (2, 2, 1.0)], 3);
        let mixed = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(objective_oracle(&mixed, &id, 1.0, 0.1).unwrap().is_accept());

        let pm = problem(&[(0, 0, 1.0), (1, 1, -1.0)], 2);
        let half = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(
            objective_oracle(&half, &pm, 0.9, 0.1).unwrap(),
            OracleVerdict::Separate(Separator::Objective { sign: -1 })
        );
        assert!(objective_oracle(&half, &pm, -1.0, 0.1).unwrap().is_accept());
    }

    #[test]
    fn diagonal_examples() {
        assert!(diagonal_oracle(&DensityMatrix::maximally_mixed(5).unwrap(), 0.01).is_accept());
        let e1 = DensityMatrix::pure(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            diagonal_oracle(&e1, 0.5),
            OracleVerdict::Separate(Separator::Diagonal {
                mask: vec![true, false, false, false]
            })
        );
        let d = 0.05;
        let m = crate::matrix::DenseMatrix::from_diagonal(&[0.5 + d, 0.5 - d]);
        let rho = DensityMatrix::new(m, 1e-12).unwrap();
        assert!(diagonal_oracle(&rho, 2.0 * d + 1e-15).is_accept());
    }

    #[test]
    fn shot_formula() {
        assert_eq!(shot_count(100, 0.1, 16.0), 160_000);
    }

    #[test]
    fn noise_is_reproducible_and_bounded() {
        for call in 0..50 {
            let a = objective_noise(0.2, 9, call);
            assert_eq!(a, objective_noise(0.2, 9, call));
            assert!(a.abs() <= 0.1);
        }
    }

    #[test]
    fn sampled_objective_boundary() {
        let pm = problem(&[(0, 0, 1.0), (1, 1, -1.0)], 2);
        let half = DensityMatrix::maximally_mixed(2).unwrap();
        // Exact value 0 = λ − ε: the reading stays below λ − ε/2 for every η.
        let cfg = SolverConfig::default();
        for call in 0..100 {
            let v = sampled_objective_oracle(&half, &pm, 0.1, 0.1, &cfg, call).unwrap();
            assert!(!v.is_accept());
        }
    }
}
