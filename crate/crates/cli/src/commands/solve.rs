use std::path::Path;

use anyhow::{Context, Result};
use maxqp_core::matrix::SparseSymMatrix;
use maxqp_core::rounding::lift;
use maxqp_core::solver::{
    hu_feasibility, optimize, optimize_repaired, FeasibilityStatus, IterationRecord, OracleMode,
    Problem,
};

use super::Status;
use crate::cli::SolveArgs;
use crate::docs::{HamiltonianDoc, ProbeDoc, RepairedDoc, ResultDoc, SearchStepDoc, TraceRow};
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

/// Reads the instance, lifting it when asked.
pub fn load_instance(path: &Path, lifted: bool) -> Result<SparseSymMatrix> {
    if lifted {
        let b = io::read_general_matrix(path)?;
        Ok(lift(&b)?.lifted)
    } else {
        io::read_matrix(path)
    }
}

pub fn run(args: &SolveArgs) -> Result<Status> {
    let cfg = args.solver.config();
    cfg.validate()?;
    let mut manifest = RunManifest::new(CommandKind::Solve, &args.out).input(&args.input);
    manifest.cfg = Some(cfg.clone());
    manifest.seed = Some(cfg.seed);
    manifest.flags.repair = args.repair;
    manifest.flags.sampled = cfg.oracle_mode == OracleMode::Sampled;
    manifest.flags.lifted = args.lifted;

    manifest.phase("read");
    let a = load_instance(&args.input, args.lifted)?;
    manifest.phase("norm");
    let problem = Problem::new(a, cfg.seed)?;
    let n = problem.dim();

    if let Some(lambda) = args.lambda {
        manifest.phase("feasibility");
        let out = hu_feasibility(&problem, lambda, &cfg)?;
        let (feasible, hamiltonian) = match &out.status {
            FeasibilityStatus::Feasible { hamiltonian, .. } => {
                (true, Some(HamiltonianDoc::from_core(hamiltonian)))
            }
            _ => (false, None),
        };
        let doc = ProbeDoc {
            lambda,
            feasible,
            iterations: out.iterations,
            n,
            norm_a: problem.norm_a(),
            eps: cfg.eps,
            lifted: args.lifted,
            hamiltonian,
        };
        manifest.phase("write");
        io::write_json(&args.out, &doc)?;
        write_trace(args.trace.as_deref(), &out.trace)?;
        manifest.write()?;
        println!(
            "level {lambda}: {} after {} iterations",
            if feasible { "feasible" } else { "infeasible" },
            out.iterations
        );
        return Ok(if feasible {
            Status::Success
        } else {
            Status::Infeasible
        });
    }

    manifest.phase("optimize");
    let (result, repaired) = if args.repair {
        let r = optimize_repaired(&problem, &cfg, args.repair_budget)?;
        manifest.phase("write-repaired");
        let bin_path = io::sibling(&args.out, "rho.bin");
        let bytes = io::dense_bytes(r.rho_sharp.matrix());
        std::fs::write(&bin_path, &bytes)
            .with_context(|| format!("writing {}", bin_path.display()))?;
        let doc = RepairedDoc {
            path: bin_path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default(),
            sha256: io::sha256_hex(&bytes),
            value_abs: r.value_abs_sharp,
            lambda_fine: r.lambda_fine,
            eps_fine: cfg.eps.powi(4),
            iterations_fine: r.iterations_fine,
            fine_diag_l1_dev: r.rho_fine.diag_l1_deviation(),
            hamiltonian_fine: HamiltonianDoc::from_core(&r.hamiltonian_fine),
        };
        (r.coarse, Some(doc))
    } else {
        (optimize(&problem, &cfg)?, None)
    };

    manifest.phase("write");
    let doc = ResultDoc {
        lambda_star: result.lambda_star,
        value_abs: result.value_abs,
        n: result.n,
        norm_a: result.norm_a,
        eps: result.eps,
        iterations_total: result.iterations_total,
        search_trace: result
            .search_trace
            .iter()
            .map(SearchStepDoc::from)
            .collect(),
        hamiltonian: HamiltonianDoc::from_core(&result.hamiltonian),
        lifted: args.lifted,
        oracle: cfg.oracle_mode,
        seed: cfg.seed,
        iter_cap_factor: cfg.iter_cap_factor,
        repaired,
    };
    io::write_json(&args.out, &doc)?;
    write_trace(args.trace.as_deref(), &result.trace)?;
    manifest.write()?;
    println!(
        "lambda_star = {:.6}  value_abs = {:.6}  ({} iterations)",
        doc.lambda_star, doc.value_abs, doc.iterations_total
    );
    if let Some(r) = &doc.repaired {
        println!("repaired value_abs = {:.6}  state: {}", r.value_abs, r.path);
    }
    Ok(Status::Success)
}

fn write_trace(path: Option<&Path>, trace: &[IterationRecord]) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut w = io::csv_writer(path)?;
    for r in trace {
        w.serialize(TraceRow::from(r))?;
    }
    w.flush()?;
    Ok(())
}
