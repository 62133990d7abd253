use std::ops::ControlFlow;
use std::time::Instant;

use anyhow::{ensure, Result};
use maxqp_core::instances::{generate, InstanceSpec};
use maxqp_core::matrix::gibbs_order;
use maxqp_core::solver::{hu_feasibility_observed, Problem, SolverConfig};
use serde::Serialize;

use super::Status;
use crate::cli::BenchArgs;
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

#[derive(Debug, Serialize)]
struct Row {
    n: usize,
    seed: u64,
    eps: f64,
    iterations: usize,
    seconds: f64,
    seconds_per_iteration: f64,
    degree: usize,
}

#[derive(Debug, Serialize)]
pub struct Fit {
    /// Least-squares slope of log(seconds per iteration) against log(n).
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Least-squares line through `(ln x, ln y)`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Option<Fit> {
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some(Fit {
        slope,
        intercept: my - slope * mx,
        points: points.len(),
    })
}

pub fn run(args: &BenchArgs) -> Result<Status> {
    ensure!(args.iterations > 0, "--iterations must be positive");
    ensure!(args.repeats > 0, "--repeats must be positive");
    let cfg = SolverConfig {
        seed: args.seed,
        ..SolverConfig::with_eps(args.eps)
    };
    cfg.validate()?;
    let mut manifest = RunManifest::new(CommandKind::Bench, &args.out);
    manifest.cfg = Some(cfg.clone());
    manifest.seed = Some(args.seed);

    let mut rows = Vec::new();
    for &n in &args.n {
        manifest.phase(&format!("n={n}"));
        let a = generate(&InstanceSpec::gaussian(n, args.seed))?;
        let problem = Problem::new(a, args.seed)?;
        let mut best: Option<Row> = None;
        for _ in 0..args.repeats {
            // Level 1 is out of reach for a random matrix, so every round
            // rejects and the timing covers full updates.
            let mut degree = 0;
            let start = Instant::now();
            let out = hu_feasibility_observed(&problem, 1.0, &cfg, |view| {
                degree = gibbs_order(view.hamiltonian, cfg.eps / 4.0);
                if view.iteration >= args.iterations {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            })?;
            let seconds = start.elapsed().as_secs_f64();
            let iterations = out.iterations.max(1);
            let row = Row {
                n,
                seed: args.seed,
                eps: args.eps,
                iterations,
                seconds,
                seconds_per_iteration: seconds / iterations as f64,
                degree,
            };
            if best.as_ref().map_or(true, |b| {
                row.seconds_per_iteration < b.seconds_per_iteration
            }) {
                best = Some(row);
            }
        }
        let row = best.expect("at least one repeat");
        println!(
            "n = {:>5}  {:.4e} s/iteration  (degree {})",
            row.n, row.seconds_per_iteration, row.degree
        );
        rows.push(row);
    }

    manifest.phase("write");
    let mut w = io::csv_writer(&args.out)?;
    for r in &rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.n as f64, r.seconds_per_iteration))
        .collect();
    if let Some(fit) = loglog_fit(&points) {
        io::write_json(&io::sibling(&args.out, "fit.json"), &fit)?;
        println!("log-log slope = {:.3}", fit.slope);
    }
    manifest.write()?;
    Ok(Status::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let pts: Vec<(f64, f64)> = [16.0, 32.0, 64.0, 128.0]
            .iter()
            .map(|&n: &f64| (n, 3e-7 * n.powf(2.5)))
            .collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.slope - 2.5).abs() < 1e-12);
    }

    #[test]
    fn fit_needs_two_sizes() {
        assert!(loglog_fit(&[(8.0, 1.0)]).is_none());
    }
}
