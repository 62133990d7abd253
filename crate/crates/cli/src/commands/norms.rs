use anyhow::Result;
use maxqp_core::instances::{
    gaussian_raw, generate, norm_profile, norm_profile_rect, InstanceKind, InstanceSpec,
    NormProfile,
};
use rayon::prelude::*;
use serde::Serialize;

use super::Status;
use crate::cli::NormsArgs;
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

#[derive(Debug, Serialize)]
struct Row {
    kind: &'static str,
    n: usize,
    seed: u64,
    ell1: f64,
    col: f64,
    op: f64,
    inf1_lower: f64,
    inf1_upper: f64,
    inf1_exact: Option<f64>,
}

impl Row {
    fn new(kind: &'static str, seed: u64, p: NormProfile) -> Self {
        Self {
            kind,
            n: p.n,
            seed,
            ell1: p.ell1,
            col: p.col,
            op: p.op,
            inf1_lower: p.inf1_lower,
            inf1_upper: p.inf1_upper,
            inf1_exact: p.inf1_exact,
        }
    }
}

pub fn run(args: &NormsArgs) -> Result<Status> {
    let kind: InstanceKind = args.kind.into();
    let mut manifest = RunManifest::new(CommandKind::Norms, &args.out);
    manifest.seed = Some(args.seed);

    let jobs: Vec<(usize, u64)> = args
        .n
        .iter()
        .flat_map(|&n| (0..args.seeds).map(move |k| (n, args.seed + k)))
        .collect();

    manifest.phase("profile");
    let rows: Vec<Vec<Row>> = jobs
        .par_iter()
        .map(|&(n, seed)| -> Result<Vec<Row>> {
            let spec = InstanceSpec {
                s: args.s,
                degree: args.degree,
                ..InstanceSpec::new(kind, n, seed)
            };
            let a = generate(&spec)?;
            let mut out = vec![Row::new(kind.as_str(), seed, norm_profile(&a, seed)?)];
            if args.raw {
                let b = gaussian_raw(n, n, seed)?;
                out.push(Row::new("gaussian_raw", seed, norm_profile_rect(&b, seed)?));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    manifest.phase("write");
    let mut w = io::csv_writer(&args.out)?;
    for r in rows.iter().flatten() {
        w.serialize(r)?;
    }
    w.flush()?;
    manifest.write()?;

    println!(
        "{:>14} {:>6} {:>12} {:>12} {:>12}",
        "kind", "n", "mean ell1", "mean col", "mean op"
    );
    for &n in &args.n {
        for label in [kind.as_str(), "gaussian_raw"] {
            let sel: Vec<&Row> = rows
                .iter()
                .flatten()
                .filter(|r| r.n == n && r.kind == label)
                .collect();
            if sel.is_empty() {
                continue;
            }
            let m = sel.len() as f64;
            let mean = |f: fn(&Row) -> f64| sel.iter().map(|r| f(r)).sum::<f64>() / m;
            println!(
                "{label:>14} {n:>6} {:>12.4} {:>12.4} {:>12.4}",
                mean(|r| r.ell1),
                mean(|r| r.col),
                mean(|r| r.op)
            );
        }
    }
    Ok(Status::Success)
}
