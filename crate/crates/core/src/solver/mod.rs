//! Hamiltonian Updates: separation oracles, the feasibility loop, bisection
//! over the objective level and repair into exactly feasible states.

mod config;
mod hu;
mod oracle;
mod problem;
mod repair;
mod search;

pub use config::{theoretical_iterations, OracleMode, SolverConfig};
pub use hu::{
    gibbs, hu_feasibility, hu_feasibility_from, hu_feasibility_observed, FeasibilityOutcome,
    FeasibilityStatus, IterationRecord, IterationView, OracleFired,
};
pub use oracle::{
    diagonal_oracle, objective_noise, objective_oracle, objective_value, sampled_diagonal_oracle,
    sampled_objective_oracle, shot_count, OracleVerdict, Separator,
};
pub use problem::Problem;
pub use repair::{repair, repair_unchecked};
pub use search::{optimize, optimize_repaired, OptimizeResult, RepairedResult, SearchStep};
