use anyhow::{bail, Result};
use maxqp_core::matrix::exact_gibbs;
use maxqp_core::rounding::{
    lift, prepare_sampler, sdp_units, RoundingReport, RoundingSource, RoundingTarget,
};
use maxqp_core::Error;
use rayon::prelude::*;
use serde::Serialize;

use super::Status;
use crate::cli::RoundArgs;
use crate::docs::ResultDoc;
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

#[derive(Serialize)]
struct SampleRow {
    sample: usize,
    value: f64,
}

pub fn run(args: &RoundArgs) -> Result<Status> {
    if args.samples == 0 {
        return Err(Error::ZeroSamples.into());
    }
    let mut manifest = RunManifest::new(CommandKind::Round, &args.out)
        .input(&args.result)
        .input(&args.input);
    manifest.seed = Some(args.seed);
    manifest.flags.psd = args.psd;
    manifest.flags.lifted = args.lifted;
    manifest.flags.exact_rounding = args.exact;
    manifest.flags.samples = Some(args.samples);

    manifest.phase("read");
    let doc: ResultDoc = io::read_json(&args.result)?;
    if doc.lifted != args.lifted {
        return Err(Error::ModeMismatch(if args.lifted {
            "--lifted needs a result from `solve --lifted`"
        } else {
            "the result was solved on a lifted matrix; pass --lifted"
        })
        .into());
    }
    let lifted;
    let sym;
    let target = if args.lifted {
        lifted = lift(&io::read_general_matrix(&args.input)?)?;
        RoundingTarget::Lifted(&lifted)
    } else {
        sym = io::read_matrix(&args.input)?;
        RoundingTarget::Psd(&sym)
    };
    let a = target.solved_matrix();
    if a.dim() != doc.n {
        bail!(
            "result is for n = {} but the instance has n = {}",
            doc.n,
            a.dim()
        );
    }
    let h = doc.hamiltonian.to_core(doc.norm_a)?;

    manifest.phase("prepare");
    let rho;
    let source = if args.exact {
        rho = exact_gibbs(a, &h)?;
        RoundingSource::Density(&rho)
    } else {
        RoundingSource::Hamiltonian {
            h: &h,
            eps: doc.eps,
        }
    };
    let sampler = prepare_sampler(target, source)?;

    manifest.phase("sample");
    let signs: Vec<Vec<i8>> = (0..args.samples as u64)
        .into_par_iter()
        .map(|k| sampler.round(args.seed, k))
        .collect();
    let values: Vec<f64> = signs.iter().map(|s| target.value(s)).collect();
    let report = RoundingReport::from_samples(
        target.mode(),
        args.seed,
        sampler.degree(),
        sdp_units(target.mode(), doc.value_abs),
        signs,
        values,
    )?;

    manifest.phase("write");
    io::write_json(&args.out, &report)?;
    if let Some(path) = &args.csv {
        let mut w = io::csv_writer(path)?;
        for (sample, &value) in report.values.iter().enumerate() {
            w.serialize(SampleRow { sample, value })?;
        }
        w.flush()?;
    }
    manifest.write()?;
    let (lo, hi) = report.mean_ci95();
    println!(
        "mean value = {:.6} (95% CI [{lo:.6}, {hi:.6}])  sdp value = {:.6}  ratio = {:.4}",
        report.mean_value, report.sdp_value_abs, report.ratio
    );
    Ok(Status::Success)
}
