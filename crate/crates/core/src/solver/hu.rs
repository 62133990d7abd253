//! The Hamiltonian Updates feasibility loop.

use alloc::format;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::config::{OracleMode, SolverConfig};
use super::oracle::{
    diagonal_oracle, objective_oracle, objective_value, sampled_diagonal_oracle,
    sampled_objective_oracle, OracleVerdict, Separator,
};
use super::problem::Problem;
use crate::error::{Error, Result};
use crate::matrix::{gibbs_order, truncated_gibbs, DensityMatrix, Hamiltonian};

/// Which oracle rejected at an iteration, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFired {
    None,
    Diagonal,
    Objective,
}

impl OracleFired {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleFired::None => "none",
            OracleFired::Diagonal => "diagonal",
            OracleFired::Objective => "objective",
        }
    }
}

/// One row of the iteration log. `objective` and `diag_l1_dev` are exact
/// values of the state the oracles saw, whatever the oracle mode.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub oracle_fired: OracleFired,
    pub objective: f64,
    pub diag_l1_dev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityStatus {
    Feasible {
        rho: DensityMatrix,
        hamiltonian: Hamiltonian,
    },
    Infeasible,
    /// Stopped early by an observer.
    Interrupted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityOutcome {
    pub status: FeasibilityStatus,
    /// Number of Hamiltonian updates performed.
    pub iterations: usize,
    pub trace: Vec<IterationRecord>,
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, FeasibilityStatus::Feasible { .. })
    }
}

/// State handed to an observer after the oracles have ruled on iterate `t`.
pub struct IterationView<'a> {
    pub iteration: usize,
    pub hamiltonian: &'a Hamiltonian,
    pub rho: &'a DensityMatrix,
    pub verdict: &'a OracleVerdict,
}

/// Decides whether some state has `Σ|ρ_ii − 1/n| ≤ ε` and
/// `tr(Aρ)/‖A‖ ≥ λ − ε`.
///
/// Starts from `H = 0`, queries the diagonal oracle and then the objective
/// oracle, and on rejection adds `(ε/8)·P` to `H`. Gibbs states are formed
/// by [`truncated_gibbs`] at accuracy `ε/4`.
pub fn hu_feasibility(
    problem: &Problem,
    lambda: f64,
    cfg: &SolverConfig,
) -> Result<FeasibilityOutcome> {
    hu_feasibility_observed(problem, lambda, cfg, |_| ControlFlow::Continue(()))
}

/// [`hu_feasibility`] with a callback after every oracle round.
pub fn hu_feasibility_observed<F>(
    problem: &Problem,
    lambda: f64,
    cfg: &SolverConfig,
    observer: F,
) -> Result<FeasibilityOutcome>
where
    F: FnMut(&IterationView<'_>) -> ControlFlow<()>,
{
    let h0 = Hamiltonian::zero(problem.dim(), problem.norm_a())?;
    hu_feasibility_from(problem, lambda, cfg, h0, observer)
}

/// [`hu_feasibility_observed`] starting from `h0` instead of `H = 0`.
pub fn hu_feasibility_from<F>(
    problem: &Problem,
    lambda: f64,
    cfg: &SolverConfig,
    h0: Hamiltonian,
    mut observer: F,
) -> Result<FeasibilityOutcome>
where
    F: FnMut(&IterationView<'_>) -> ControlFlow<()>,
{
    cfg.validate()?;
    if !(-1.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidConfig("lambda must lie in [-1, 1]"));
    }
    let n = problem.dim();
    if h0.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h0.dim(),
        });
    }
    let eps = cfg.eps;
    let step = eps / 8.0;
    let cap = cfg.iteration_cap(n);
    let mut h = h0;
    let mut rho = gibbs(problem, &h, eps)?;
    let mut trace = Vec::new();

    for t in 0..=cap {
        let call = t as u64;
        let verdict = match cfg.oracle_mode {
            OracleMode::Exact => match diagonal_oracle(&rho, eps) {
                OracleVerdict::Accept => objective_oracle(&rho, problem, lambda, eps)?,
                sep => sep,
            },
            OracleMode::Sampled => match sampled_diagonal_oracle(&rho, eps, cfg, call) {
                OracleVerdict::Accept => {
                    sampled_objective_oracle(&rho, problem, lambda, eps, cfg, call)?
                }
                sep => sep,
            },
        };
        let objective = objective_value(problem, &rho)?;
        let diag_l1_dev = rho.diag_l1_deviation();
        trace.push(IterationRecord {
            iter: t,
            oracle_fired: match &verdict {
                OracleVerdict::Accept => OracleFired::None,
                OracleVerdict::Separate(Separator::Diagonal { .. }) => OracleFired::Diagonal,
                OracleVerdict::Separate(Separator::Objective { .. }) => OracleFired::Objective,
            },
            objective,
            diag_l1_dev,
        });
        let view = IterationView {
            iteration: t,
            hamiltonian: &h,
            rho: &rho,
            verdict: &verdict,
        };
        if observer(&view).is_break() {
            return Ok(FeasibilityOutcome {
                status: FeasibilityStatus::Interrupted,
                iterations: t,
                trace,
            });
        }
        match verdict {
            OracleVerdict::Accept => {
                if diag_l1_dev > eps || objective < lambda - eps {
                    return Err(Error::Invariant(format!(
                        "accepted state misses the certificate: deviation {diag_l1_dev}, \
                         objective {objective} at level {lambda}"
                    )));
                }
                return Ok(FeasibilityOutcome {
                    status: FeasibilityStatus::Feasible {
                        rho,
                        hamiltonian: h,
                    },
                    iterations: t,
                    trace,
                });
            }
            OracleVerdict::Separate(sep) => {
                if t == cap {
                    break;
                }
                match sep {
                    Separator::Objective { sign } => h.add_objective(step * f64::from(sign)),
                    Separator::Diagonal { mask } => h.add_diagonal(step, &mask),
                }
                rho = gibbs(problem, &h, eps)?;
            }
        }
    }
    Ok(FeasibilityOutcome {
        status: FeasibilityStatus::Infeasible,
        iterations: cap,
        trace,
    })
}

/// The Gibbs state the loop uses for `h`.
pub fn gibbs(problem: &Problem, h: &Hamiltonian, eps: f64) -> Result<DensityMatrix> {
    truncated_gibbs(problem.matrix(), h, gibbs_order(h, eps / 4.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SparseSymMatrix;
    use alloc::vec;

    fn problem(entries: Vec<(usize, usize, f64)>, n: usize) -> Problem {
        Problem::new(SparseSymMatrix::from_entries(n, entries).unwrap(), 3).unwrap()
    }

    fn c4_negated() -> Problem {
        problem(
            vec![(0, 1, -1.0), (1, 2, -1.0), (2, 3, -1.0), (0, 3, -1.0)],
            4,
        )
    }

    #[test]
    fn identity_feasible_immediately() {
        let p = problem((0..5).map(|i| (i, i, 1.0)).collect(), 5);
        let out = hu_feasibility(&p, 1.0, &SolverConfig::default()).unwrap();
        assert!(out.is_feasible());
        assert_eq!(out.iterations, 0);
    }

    #[test]
    fn alternating_diagonal_infeasible() {
        let p = problem(
            vec![(0, 0, 1.0), (1, 1, -1.0), (2, 2, 1.0), (3, 3, -1.0)],
            4,
        );
        let cfg = SolverConfig::with_eps(0.1);
        let out = hu_feasibility(&p, 0.9, &cfg).unwrap();
        assert_eq!(out.status, FeasibilityStatus::Infeasible);
        assert_eq!(out.iterations, cfg.iteration_cap(4));
    }

    #[test]
    fn c4_feasible_near_one() {
        let cfg = SolverConfig::with_eps(0.1);
        let out = hu_feasibility(&c4_negated(), 0.9, &cfg).unwrap();
        assert!(out.is_feasible());
        assert!(out.iterations <= cfg.theoretical_iterations(4));
    }

    #[test]
    fn observer_can_interrupt() {
        let cfg = SolverConfig::with_eps(0.1);
        let out = hu_feasibility_observed(&c4_negated(), 0.9, &cfg, |v| {
            if v.iteration == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!(out.status, FeasibilityStatus::Interrupted);
        assert_eq!(out.trace.len(), 4);
    }

    #[test]
    fn lambda_out_of_range() {
        assert!(hu_feasibility(&c4_negated(), 1.5, &SolverConfig::default()).is_err());
    }
}
