//! JSON documents exchanged between commands.

use maxqp_core::matrix::Hamiltonian;
use maxqp_core::solver::{IterationRecord, OracleMode, SearchStep};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianDoc {
    pub a: f64,
    pub d: Vec<f64>,
}

impl HamiltonianDoc {
    pub fn from_core(h: &Hamiltonian) -> Self {
        Self {
            a: h.a(),
            d: h.d().to_vec(),
        }
    }

    pub fn to_core(&self, norm_a: f64) -> maxqp_core::Result<Hamiltonian> {
        Hamiltonian::from_parts(self.a, self.d.clone(), norm_a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchStepDoc {
    pub lambda: f64,
    pub feasible: bool,
    pub iterations: usize,
}

impl From<&SearchStep> for SearchStepDoc {
    fn from(s: &SearchStep) -> Self {
        Self {
            lambda: s.lambda,
            feasible: s.feasible,
            iterations: s.iterations,
        }
    }
}

/// Exactly feasible state written by `solve --repair`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepairedDoc {
    /// Dense row-major little-endian `f64` file, relative to the result file.
    pub path: String,
    pub sha256: String,
    /// `n · tr(A ρ♯)`.
    pub value_abs: f64,
    /// Level of the `eps⁴` refinement.
    pub lambda_fine: f64,
    pub eps_fine: f64,
    pub iterations_fine: usize,
    /// `Σ_i |ρ_ii − 1/n|` of the refined state before repair.
    pub fine_diag_l1_dev: f64,
    pub hamiltonian_fine: HamiltonianDoc,
}

/// Output of `solve`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub lambda_star: f64,
    pub value_abs: f64,
    pub n: usize,
    pub norm_a: f64,
    pub eps: f64,
    pub iterations_total: usize,
    pub search_trace: Vec<SearchStepDoc>,
    pub hamiltonian: HamiltonianDoc,
    #[serde(default)]
    pub lifted: bool,
    #[serde(default)]
    pub oracle: OracleMode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_cap_factor")]
    pub iter_cap_factor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repaired: Option<RepairedDoc>,
}

fn default_cap_factor() -> f64 {
    4.0
}

/// Output of `solve --lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeDoc {
    pub lambda: f64,
    pub feasible: bool,
    pub iterations: usize,
    pub n: usize,
    pub norm_a: f64,
    pub eps: f64,
    #[serde(default)]
    pub lifted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<HamiltonianDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceRow<'a> {
    pub iter: usize,
    pub oracle_fired: &'a str,
    pub objective: f64,
    pub diag_l1_dev: f64,
}

impl<'a> From<&'a IterationRecord> for TraceRow<'a> {
    fn from(r: &'a IterationRecord) -> Self {
        Self {
            iter: r.iter,
            oracle_fired: r.oracle_fired.as_str(),
            objective: r.objective,
            diag_l1_dev: r.diag_l1_dev,
        }
    }
}

/// One named pass/fail line of `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub passed: bool,
    pub checks: Vec<Check>,
}
