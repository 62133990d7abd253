use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use maxqp_core::instances::InstanceKind;
use maxqp_core::solver::{OracleMode, SolverConfig};

#[derive(Debug, Parser)]
#[command(
    name = "maxqp",
    version,
    about = "Approximate MaxQP and ∞→1 norms via Hamiltonian Updates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance as Matrix Market plus a JSON spec sidecar.
    Gen(GenArgs),
    /// Solve the relaxation for an instance.
    Solve(SolveArgs),
    /// Round a solved instance to sign vectors.
    Round(RoundArgs),
    /// Recheck the certificates in a result file.
    Verify(VerifyArgs),
    /// Norm profiles of random matrices.
    Norms(NormsArgs),
    /// Time Hamiltonian Updates iterations over a range of sizes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Gaussian,
    SparsePm1,
    RegularGraph,
    PsdGram,
}

impl From<KindArg> for InstanceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Gaussian => InstanceKind::Gaussian,
            KindArg::SparsePm1 => InstanceKind::SparsePm1,
            KindArg::RegularGraph => InstanceKind::RegularGraph,
            KindArg::PsdGram => InstanceKind::PsdGram,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Exact,
    Sampled,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Nonzeros per row (sparse-pm1).
    #[arg(long)]
    pub s: Option<usize>,
    /// Vertex degree (regular-graph).
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Gaussian instances without diagonal entries.
    #[arg(long)]
    pub zero_diagonal: bool,
    /// Output `.mtx` path; the spec goes next to it as `.json`.
    #[arg(long)]
    pub out: PathBuf,
}

/// Solver settings shared by `solve` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4.0)]
    pub iter_cap_factor: f64,
    #[arg(long, value_enum, default_value_t = OracleArg::Exact)]
    pub oracle: OracleArg,
    #[arg(long, default_value_t = 16.0)]
    pub sample_factor: f64,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            eps: self.eps,
            iter_cap_factor: self.iter_cap_factor,
            oracle_mode: match self.oracle {
                OracleArg::Exact => OracleMode::Exact,
                OracleArg::Sampled => OracleMode::Sampled,
            },
            sample_factor: self.sample_factor,
            seed: self.seed,
            lambda_tol: None,
            max_iterations: None,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Instance in Matrix Market format.
    pub input: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Refine to an eps⁴-feasible state and repair it into an exactly feasible one.
    #[arg(long)]
    pub repair: bool,
    /// Iteration budget of the eps⁴ refinement.
    #[arg(long, default_value_t = 1_000_000)]
    pub repair_budget: usize,
    /// Solve the lift [[0, A], [Aᵀ, 0]] (∞→1 norm); accepts general matrices.
    #[arg(long)]
    pub lifted: bool,
    /// Run a single feasibility check at this level instead of the bisection.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Per-iteration CSV log of the probe behind the reported level.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundArgs {
    /// Result JSON written by `solve`.
    pub result: PathBuf,
    /// The instance that was solved.
    pub input: PathBuf,
    /// Round a PSD instance and report ⟨x, Ax⟩.
    #[arg(long, conflicts_with = "lifted", required_unless_present = "lifted")]
    pub psd: bool,
    /// Round a lifted solution and report ⟨x, Ay⟩.
    #[arg(long)]
    pub lifted: bool,
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use the exact square root of the Gibbs state instead of the Taylor rounder.
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// Per-sample values as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    pub result: PathBuf,
    /// Rounding report to include in the sandwich check.
    #[arg(long)]
    pub rounding: Option<PathBuf>,
    /// Where to write the verdict JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NormsArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Gaussian)]
    pub kind: KindArg,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Number of seeds per size, counted up from `--seed`.
    #[arg(long, default_value_t = 10)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Also profile non-symmetric i.i.d. Gaussian matrices.
    #[arg(long)]
    pub raw: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [64usize, 128, 256, 512])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 0.2)]
    pub eps: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hamiltonian Updates iterations timed per size.
    #[arg(long, default_value_t = 8)]
    pub iterations: usize,
    /// Timed repetitions per size; the fastest is kept.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
    #[arg(long)]
    pub out: PathBuf,
}
