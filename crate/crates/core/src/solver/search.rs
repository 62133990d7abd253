//! Bisection over the objective level and the repaired-output pipeline.

use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::config::SolverConfig;
use super::hu::{
    hu_feasibility, hu_feasibility_from, FeasibilityOutcome, FeasibilityStatus, IterationRecord,
};
use super::problem::Problem;
use super::repair::repair;
use crate::error::{Error, Result};
use crate::matrix::{trace_product, DensityMatrix, Hamiltonian};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// One probe of the bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchStep {
    pub lambda: f64,
    pub feasible: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    /// Largest level certified feasible, in `[−1, 1]`.
    pub lambda_star: f64,
    pub hamiltonian: Hamiltonian,
    pub rho: DensityMatrix,
    /// `lambda_star · n · ‖A‖`.
    pub value_abs: f64,
    pub n: usize,
    pub norm_a: f64,
    pub eps: f64,
    pub iterations_total: usize,
    pub search_trace: Vec<SearchStep>,
    /// Iteration log of the probe that certified `lambda_star`.
    pub trace: Vec<IterationRecord>,
}

/// Bisects `λ ∈ [−1, 1]` down to `cfg.lambda_tol()`, keeping the largest
/// level at which [`hu_feasibility`] certified a state.
pub fn optimize(problem: &Problem, cfg: &SolverConfig) -> Result<OptimizeResult> {
    cfg.validate()?;
    let tol = cfg.lambda_tol();
    let mut trace = Vec::new();
    let mut total = 0usize;

    let mut probe = |lambda: f64, trace: &mut Vec<SearchStep>| -> Result<FeasibilityOutcome> {
        let out = hu_feasibility(problem, lambda, cfg)?;
        total += out.iterations;
        trace.push(SearchStep {
            lambda,
            feasible: out.is_feasible(),
            iterations: out.iterations,
        });
        Ok(out)
    };

    let first = probe(-1.0, &mut trace)?;
    let mut log = first.trace;
    let (mut rho, mut h) = match first.status {
        FeasibilityStatus::Feasible { rho, hamiltonian } => (rho, hamiltonian),
        _ => return Err(Error::NoFeasibleLevel),
    };
    let mut lo = -1.0;
    let mut hi = 1.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let out = probe(mid, &mut trace)?;
        match out.status {
            FeasibilityStatus::Feasible {
                rho: r,
                hamiltonian,
            } => {
                lo = mid;
                rho = r;
                h = hamiltonian;
                log = out.trace;
            }
            _ => hi = mid,
        }
    }
    let n = problem.dim();
    Ok(OptimizeResult {
        lambda_star: lo,
        hamiltonian: h,
        rho,
        value_abs: lo * n as f64 * problem.norm_a(),
        n,
        norm_a: problem.norm_a(),
        eps: cfg.eps,
        iterations_total: total,
        search_trace: trace,
        trace: log,
    })
}

/// Output of [`optimize_repaired`].
#[derive(Debug, Clone, PartialEq)]
pub struct RepairedResult {
    /// The coarse bisection at accuracy `ε`.
    pub coarse: OptimizeResult,
    /// Level at which the `ε⁴` refinement succeeded.
    pub lambda_fine: f64,
    /// The `ε⁴`-feasible Gibbs state and its Hamiltonian.
    pub rho_fine: DensityMatrix,
    pub hamiltonian_fine: Hamiltonian,
    /// Exactly feasible repaired state.
    pub rho_sharp: DensityMatrix,
    /// `tr(Aρ♯) · n`, the objective of the repaired state.
    pub value_abs_sharp: f64,
    pub iterations_fine: usize,
}

/// Solves at accuracy `ε`, refines to an `ε⁴`-feasible state and repairs it.
///
/// A full bisection at accuracy `ε⁴` is out of reach (its iteration bound
/// scales as `ε⁻⁸`), so the refinement is a single feasibility run at the
/// level `λ* − ε` warm-started from the coarse Hamiltonian, with at most
/// `fine_budget` iterations. If it fails the level drops by `ε` and the run
/// is repeated.
pub fn optimize_repaired(
    problem: &Problem,
    cfg: &SolverConfig,
    fine_budget: usize,
) -> Result<RepairedResult> {
    let coarse = optimize(problem, cfg)?;
    let eps = cfg.eps;
    let fine_cfg = SolverConfig {
        eps: eps.powi(4),
        max_iterations: Some(fine_budget),
        ..cfg.clone()
    };
    let mut lambda = (coarse.lambda_star - eps).max(-1.0);
    let mut iterations = 0usize;
    loop {
        let out = hu_feasibility_from(
            problem,
            lambda,
            &fine_cfg,
            coarse.hamiltonian.clone(),
            |_| ControlFlow::Continue(()),
        )?;
        iterations += out.iterations;
        if let FeasibilityStatus::Feasible { rho, hamiltonian } = out.status {
            let rho_sharp = repair(&rho, eps)?;
            let n = problem.dim() as f64;
            let value_abs_sharp = trace_product(problem.matrix(), &rho_sharp)? * n;
            return Ok(RepairedResult {
                coarse,
                lambda_fine: lambda,
                rho_fine: rho,
                hamiltonian_fine: hamiltonian,
                rho_sharp,
                value_abs_sharp,
                iterations_fine: iterations,
            });
        }
        if lambda <= -1.0 {
            return Err(Error::NoFeasibleLevel);
        }
        lambda = (lambda - eps).max(-1.0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseSymMatrix;
    use alloc::vec;

    fn problem(entries: Vec<(usize, usize, f64)>, n: usize) -> Problem {
        Problem::new(SparseSymMatrix::from_entries(n, entries).unwrap(), 5).unwrap()
    }

    #[test]
    fn identity_reaches_one() {
        let cfg = SolverConfig::with_eps(0.1);
        let r = optimize(&problem((0..6).map(|i| (i, i, 1.0)).collect(), 6), &cfg).unwrap();
        assert!(r.lambda_star >= 1.0 - cfg.lambda_tol());
        assert!((r.value_abs - 6.0).abs() <= 0.6);
    }

    #[test]
    fn negative_identity_stays_at_minus_one() {
        let cfg = SolverConfig::with_eps(0.1);
        let r = optimize(&problem((0..3).map(|i| (i, i, -1.0)).collect(), 3), &cfg).unwrap();
        // Levels up to −1 + ε are accepted by the ε-tolerant objective check.
        assert!(r.lambda_star <= -1.0 + cfg.eps + cfg.lambda_tol());
    }

    #[test]
    fn c4_value_is_eight() {
        let cfg = SolverConfig::with_eps(0.1);
        let c4 = vec![(0, 1, -1.0), (1, 2, -1.0), (2, 3, -1.0), (0, 3, -1.0)];
        let r = optimize(&problem(c4, 4), &cfg).unwrap();
        assert!((r.lambda_star - 1.0).abs() <= cfg.lambda_tol() + cfg.eps);
        assert!((r.value_abs - 8.0).abs() <= 0.8 + 1e-9);
    }

    #[test]
    fn bisection_trace_is_consistent() {
        let cfg = SolverConfig::with_eps(0.2);
        let a = vec![(0, 1, 1.0), (1, 2, -1.0), (0, 2, 0.5), (1, 1, 0.3)];
        let r = optimize(&problem(a, 3), &cfg).unwrap();
        let best_feasible = r
            .search_trace
            .iter()
            .filter(|s| s.feasible)
            .map(|s| s.lambda)
            .fold(f64::NEG_INFINITY, f64::max);
        let worst_infeasible = r
            .search_trace
            .iter()
            .filter(|s| !s.feasible)
            .map(|s| s.lambda)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(best_feasible, r.lambda_star);
        assert!(best_feasible < worst_infeasible);
    }
}
