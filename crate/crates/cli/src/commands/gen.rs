use anyhow::Result;
use maxqp_core::instances::{generate, InstanceSpec};

use super::Status;
use crate::cli::GenArgs;
use crate::io;
use crate::manifest::{CommandKind, RunManifest};

pub fn run(args: &GenArgs) -> Result<Status> {
    let spec = InstanceSpec {
        kind: args.kind.into(),
        n: args.n,
        s: args.s,
        degree: args.degree,
        seed: args.seed,
        zero_diagonal: args.zero_diagonal,
    };
    let mut manifest = RunManifest::new(CommandKind::Gen, &args.out);
    manifest.seed = Some(args.seed);

    manifest.phase("generate");
    let a = generate(&spec)?;
    manifest.phase("write");
    io::write_matrix(&a, &args.out)?;
    io::write_json(&io::sibling(&args.out, "json"), &spec)?;
    manifest.write()?;
    println!(
        "wrote {} ({} x {}, {} stored entries)",
        args.out.display(),
        a.dim(),
        a.dim(),
        a.entries().len()
    );
    Ok(Status::Success)
}
