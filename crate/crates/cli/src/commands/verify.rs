use std::f64::consts::PI;
use std::path::Path;

use anyhow::{Context, Result};
use maxqp_core::instances::{brute_force_maxqp, BRUTE_FORCE_CAP};
use maxqp_core::matrix::{trace_product, DensityMatrix, DEFAULT_DENSE_CAP, DEFAULT_TRACE_TOL};
use maxqp_core::rounding::{RoundingMode, RoundingReport};
use maxqp_core::solver::{gibbs, objective_value, Problem};

use super::solve::load_instance;
use super::Status;
use crate::cli::VerifyArgs;
use crate::docs::{Check, ResultDoc, VerifyDoc};
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.0.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn run(args: &VerifyArgs) -> Result<Status> {
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| io::sibling(&args.result, "verify.json"));
    let mut manifest = RunManifest::new(CommandKind::Verify, &out)
        .input(&args.input)
        .input(&args.result);
    manifest.phase("read");
    let doc: ResultDoc = io::read_json(&args.result)?;
    let report: Option<RoundingReport> = args.rounding.as_deref().map(io::read_json).transpose()?;
    let a = load_instance(&args.input, doc.lifted)?;

    manifest.phase("check");
    let verdict = check_result(&doc, &a, report.as_ref(), args.result.parent())?;
    for c in &verdict.checks {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    io::write_json(&out, &verdict)?;
    manifest.write()?;
    Ok(if verdict.passed {
        Status::Success
    } else {
        Status::ChecksFailed
    })
}

/// Recomputes every certificate a result file claims.
pub fn check_result(
    doc: &ResultDoc,
    a: &maxqp_core::SparseSymMatrix,
    report: Option<&RoundingReport>,
    dir: Option<&Path>,
) -> Result<VerifyDoc> {
    let mut checks = Checks(Vec::new());
    let n = a.dim();
    anyhow::ensure!(
        n == doc.n,
        "result is for n = {} but the instance has n = {n}",
        doc.n
    );
    let eps = doc.eps;
    let scale = n as f64 * doc.norm_a;

    checks.push(
        "lambda_range",
        (-1.0..=1.0).contains(&doc.lambda_star),
        format!("lambda_star = {}", doc.lambda_star),
    );
    let expect = doc.lambda_star * scale;
    checks.push(
        "value_consistency",
        (doc.value_abs - expect).abs() <= 1e-9 * expect.abs().max(1.0),
        format!(
            "value_abs = {}, lambda_star·n·norm_a = {expect}",
            doc.value_abs
        ),
    );

    let fresh = Problem::new(a.clone(), doc.seed)?;
    let rel = (fresh.norm_a() - doc.norm_a).abs() / fresh.norm_a();
    checks.push(
        "norm_estimate",
        rel <= 1e-3,
        format!(
            "recomputed {} vs recorded {} (relative {rel:.2e})",
            fresh.norm_a(),
            doc.norm_a
        ),
    );

    // The certificate is the Gibbs state of the recorded Hamiltonian, formed
    // exactly as the solver formed it.
    let problem = Problem::with_norm(a.clone(), doc.norm_a)?;
    let h = doc.hamiltonian.to_core(doc.norm_a)?;
    let rho = gibbs(&problem, &h, eps)?;
    let dev = rho.diag_l1_deviation();
    checks.push(
        "diag_deviation",
        dev <= eps + 1e-12,
        format!("Σ|ρ_ii − 1/n| = {dev:.3e} (bound {eps})"),
    );
    let obj = objective_value(&problem, &rho)?;
    checks.push(
        "objective_certificate",
        obj >= doc.lambda_star - eps - 1e-12,
        format!(
            "tr(Aρ)/‖A‖ = {obj:.6} (needs ≥ lambda_star − eps = {:.6})",
            doc.lambda_star - eps
        ),
    );

    if let Some(rep) = &doc.repaired {
        let path = match dir {
            Some(d) => d.join(&rep.path),
            None => Path::new(&rep.path).to_path_buf(),
        };
        let bytes = std::fs::read(&path).with_context(|| format!("reading {}", path.display()))?;
        let sum = io::sha256_hex(&bytes);
        checks.push(
            "repaired_checksum",
            sum == rep.sha256,
            format!("sha256 {sum}"),
        );
        let m = io::dense_from_bytes(n, &bytes)?;
        let u = 1.0 / n as f64;
        let diag_err = (0..n).map(|i| (m.get(i, i) - u).abs()).fold(0.0, f64::max);
        checks.push(
            "repaired_diagonal",
            diag_err <= 1e-14,
            format!("max |ρ♯_ii − 1/n| = {diag_err:.2e}"),
        );
        let tr = m.trace();
        checks.push(
            "repaired_trace",
            (tr - 1.0).abs() <= 1e-10,
            format!("trace = {tr}"),
        );
        match DensityMatrix::new(m, DEFAULT_TRACE_TOL) {
            Ok(state) => {
                if n <= DEFAULT_DENSE_CAP {
                    let min = state.min_eigenvalue();
                    checks.push(
                        "repaired_psd",
                        min >= -1e-10,
                        format!("minimum eigenvalue {min:.3e}"),
                    );
                }
                let v = trace_product(a, &state)? * n as f64;
                checks.push(
                    "repaired_value",
                    (v - rep.value_abs).abs() <= 1e-9 * v.abs().max(1.0),
                    format!("n·tr(Aρ♯) = {v}, recorded {}", rep.value_abs),
                );
            }
            Err(e) => checks.push("repaired_state", false, e.to_string()),
        }
    }

    if n <= BRUTE_FORCE_CAP {
        let (opt, _) = brute_force_maxqp(a)?;
        let upper = doc.value_abs + eps * scale;
        checks.push(
            "sandwich_upper",
            upper >= opt - 1e-9 * opt.abs().max(1.0),
            format!("value_abs + eps·n·‖A‖ = {upper:.6} ≥ max xᵀAx = {opt:.6}"),
        );
        if let Some(r) = report {
            let (gamma, units) = match r.mode {
                RoundingMode::Psd => (2.0 / PI, 1.0),
                RoundingMode::Lifted => (4.0 / PI - 1.0, 0.5),
            };
            let best = r.values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            checks.push(
                "rounding_below_optimum",
                best <= units * opt + 1e-9 * opt.abs().max(1.0),
                format!("best sample {best:.6} ≤ optimum {:.6}", units * opt),
            );
            let floor = gamma * units * (doc.value_abs - eps * scale);
            let hi = r.mean_value + 1.645 * r.std_dev() / (r.samples as f64).sqrt();
            checks.push(
                "rounding_mean_lower",
                hi >= floor,
                format!(
                    "mean {:.6} (upper 95% bound {hi:.6}) ≥ γ·(value − eps·n·‖A‖) = {floor:.6}",
                    r.mean_value
                ),
            );
        }
    } else {
        checks.push(
            "sandwich_upper",
            true,
            format!("skipped: n = {n} exceeds the exhaustive-search cap {BRUTE_FORCE_CAP}"),
        );
    }

    let passed = checks.0.iter().all(|c| c.passed);
    Ok(VerifyDoc {
        passed,
        checks: checks.0,
    })
}
