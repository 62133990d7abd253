//! Command-line front end for the `maxqp` solver: instance generation, the
//! Hamiltonian Updates relaxation, rounding, verification and benchmarks.

pub mod cli;
pub mod commands;
pub mod docs;
pub mod io;
pub mod manifest;

use anyhow::Result;
use maxqp_core::Error;

pub use cli::{Cli, Command};
pub use commands::Status;

pub fn run(cli: &Cli) -> Result<Status> {
    match &cli.command {
        Command::Gen(a) => commands::gen::run(a),
        Command::Solve(a) => commands::solve::run(a),
        Command::Round(a) => commands::round::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Norms(a) => commands::norms::run(a),
        Command::Bench(a) => commands::bench::run(a),
    }
}

/// Exit code for a failed command: 3 when the solver itself broke down,
/// 2 for anything wrong with the input.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    let solver_failure = err.chain().any(|e| {
        matches!(
            e.downcast_ref::<Error>(),
            Some(Error::Invariant(_) | Error::NoFeasibleLevel | Error::NoConvergence { .. })
        )
    });
    if solver_failure {
        3
    } else {
        2
    }
}

/// Sizes the global thread pool from `MAXQP_THREADS`, if set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("MAXQP_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| anyhow::anyhow!("MAXQP_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()?;
    }
    Ok(())
}
