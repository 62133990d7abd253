use crate::error::{Error, Result};
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// How the separation oracles read the current state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum OracleMode {
    /// Exact diagonal and exact objective.
    #[default]
    Exact,
    /// Simulated computational-basis measurements for the diagonal and a
    /// bounded-noise estimate of the objective.
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolverConfig {
    /// Accuracy `ε ∈ (0, 1)`.
    pub eps: f64,
    /// Multiplier on `⌈16 ln n / ε²⌉ + 1`.
    pub iter_cap_factor: f64,
    pub oracle_mode: OracleMode,
    /// Shots per diagonal measurement are `⌈sample_factor · n / ε²⌉`.
    pub sample_factor: f64,
    pub seed: u64,
    /// Bisection resolution; `None` means `ε`.
    pub lambda_tol: Option<f64>,
    /// Hard ceiling on loop iterations, applied on top of the theoretical cap.
    pub max_iterations: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eps: 0.1,
            iter_cap_factor: 4.0,
            oracle_mode: OracleMode::Exact,
            sample_factor: 16.0,
            seed: 0,
            lambda_tol: None,
            max_iterations: None,
        }
    }
}

impl SolverConfig {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::InvalidConfig("eps must lie in (0, 1)"));
        }
        if !(self.iter_cap_factor >= 1.0) || !self.iter_cap_factor.is_finite() {
            return Err(Error::InvalidConfig("iter_cap_factor must be at least 1"));
        }
        if !(self.sample_factor >= 1.0) || !self.sample_factor.is_finite() {
            return Err(Error::InvalidConfig("sample_factor must be at least 1"));
        }
        if let Some(t) = self.lambda_tol {
            if !(t > 0.0) {
                return Err(Error::InvalidConfig("lambda_tol must be positive"));
            }
        }
        Ok(())
    }

    pub fn lambda_tol(&self) -> f64 {
        self.lambda_tol.unwrap_or(self.eps)
    }

    /// `⌈16 ln n / ε²⌉ + 1`.
    pub fn theoretical_iterations(&self, n: usize) -> usize {
        theoretical_iterations(n, self.eps)
    }

    /// Iterations after which the loop declares infeasibility.
    pub fn iteration_cap(&self, n: usize) -> usize {
        let cap = (self.iter_cap_factor * self.theoretical_iterations(n) as f64).ceil() as usize;
        match self.max_iterations {
            Some(m) => cap.min(m),
            None => cap,
        }
    }
}

pub fn theoretical_iterations(n: usize, eps: f64) -> usize {
    (16.0 * (n as f64).ln() / (eps * eps)).ceil() as usize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SolverConfig::default().validate().is_ok());
        assert!(SolverConfig::with_eps(1.0).validate().is_err());
        assert!(SolverConfig::with_eps(0.0).validate().is_err());
        let cfg = SolverConfig {
            iter_cap_factor: 0.5,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn iteration_bound() {
        let cfg = SolverConfig::with_eps(0.1);
        // 16 ln 4 / 0.01 = 2218.07...
        assert_eq!(cfg.theoretical_iterations(4), 2220);
        assert_eq!(cfg.iteration_cap(4), 8880);
        assert_eq!(cfg.theoretical_iterations(1), 1);
    }
}
