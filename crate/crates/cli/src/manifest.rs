use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Result;
use maxqp_core::solver::SolverConfig;
use serde::Serialize;

use crate::io;

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Gen,
    Solve,
    Round,
    Verify,
    Norms,
    Bench,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ModeFlags {
    pub repair: bool,
    pub sampled: bool,
    pub psd: bool,
    pub lifted: bool,
    pub exact_rounding: bool,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub seconds: f64,
}

/// Record of one invocation, written next to its main output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: CommandKind,
    pub input_path: Vec<PathBuf>,
    pub output_path: PathBuf,
    pub cfg: Option<SolverConfig>,
    pub flags: ModeFlags,
    pub seed: Option<u64>,
    pub threads: usize,
    pub tool_version: &'static str,
    pub timings: Vec<PhaseTiming>,
    #[serde(skip)]
    clock: Option<(String, Instant)>,
}

impl RunManifest {
    pub fn new(command: CommandKind, output_path: &Path) -> Self {
        Self {
            command,
            input_path: Vec::new(),
            output_path: output_path.to_path_buf(),
            cfg: None,
            flags: ModeFlags::default(),
            seed: None,
            threads: rayon::current_num_threads(),
            tool_version: env!("CARGO_PKG_VERSION"),
            timings: Vec::new(),
            clock: None,
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.input_path.push(path.to_path_buf());
        self
    }

    /// Closes the running phase, if any, and starts `name`.
    pub fn phase(&mut self, name: &str) {
        self.stop();
        self.clock = Some((name.to_string(), Instant::now()));
    }

    pub fn stop(&mut self) {
        if let Some((name, start)) = self.clock.take() {
            self.timings.push(PhaseTiming {
                phase: name,
                seconds: start.elapsed().as_secs_f64(),
            });
        }
    }

    /// Writes `<output stem>.manifest.json`.
    pub fn write(mut self) -> Result<PathBuf> {
        self.stop();
        let path = io::sibling(&self.output_path, "manifest.json");
        io::write_json(&path, &self)?;
        Ok(path)
    }
}
