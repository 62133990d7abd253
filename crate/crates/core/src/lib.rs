//! Approximate solver for the renormalized MaxQP semidefinite program.
//!
//! Given a sparse symmetric matrix `A`, the relaxation
//!
//! ```text
//! maximize   tr(A X) / ‖A‖
//! subject to X_ii = 1/n,  tr X = 1,  X ⪰ 0
//! ```
//!
//! is solved with Hamiltonian Updates: every iterate is a Gibbs state
//! `exp(-H) / tr exp(-H)` and infeasible directions are penalized in the
//! exponent `H`. Around the solver sit
//!
//! - [`matrix`]: sparse symmetric storage, dense kernels, Gibbs states,
//! - [`solver`]: separation oracles, the feasibility loop, bisection over the
//!   objective level and repair of approximately feasible states,
//! - [`rounding`]: Gaussian sign rounding straight from the Hamiltonian,
//!   the block lift used for the `∞→1` norm and an exact reference rounder,
//! - [`instances`]: random instance generators, exhaustive-search oracles and
//!   random-matrix norm profiles.
//!
//! The crate is `no_std` and only needs `alloc`; file formats, the CLI and
//! thread pools live in the `maxqp` crate.
#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod instances;
pub mod matrix;
pub mod rng;
pub mod rounding;
pub mod solver;

pub use error::{Error, Result};
pub use matrix::{
    exact_gibbs, operator_norm, trace_product, truncated_gibbs, truncation_order, CooMatrix,
    DenseMatrix, DensityMatrix, Hamiltonian, SparseSymMatrix,
};
pub use solver::{
    hu_feasibility, optimize, repair, FeasibilityOutcome, FeasibilityStatus, OptimizeResult,
    OracleMode, OracleVerdict, Problem, Separator, SolverConfig,
};
