use crate::error::{Error, Result};
use crate::matrix::DensityMatrix;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Turns an `ε⁴`-approximately feasible state into an exactly feasible one.
///
/// Rows and columns of coordinates whose diagonal is off by more than `ε²/n`
/// are cleared, every diagonal is set to `1/n`, and the result is mixed with
/// the identity: `ρ♯ = (R + (ε²/n)·I) / (1 + ε²)`. Every output diagonal is
/// exactly `1/n`.
pub fn repair(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    let bound = eps.powi(4);
    let deviation = rho.diag_l1_deviation();
    if deviation > bound {
        return Err(Error::RepairPrecondition { deviation, bound });
    }
    repair_unchecked(rho, eps)
}

/// [`repair`] without the `ε⁴` precondition; the closeness guarantee is
/// void, but the output is still exactly feasible.
pub fn repair_unchecked(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    if !(eps > 0.0) {
        return Err(Error::InvalidConfig("eps must be positive"));
    }
    let n = rho.dim();
    let u = 1.0 / n as f64;
    let e2 = eps * eps;
    let threshold = e2 / n as f64;
    let bad: alloc::vec::Vec<bool> = (0..n)
        .map(|i| (rho.get(i, i) - u).abs() > threshold)
        .collect();

    let mut r = rho.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            if i != j && (bad[i] || bad[j]) {
                r.set(i, j, 0.0);
            }
        }
    }
    r.symmetrize();
    let scale = 1.0 / (1.0 + e2);
    r.scale(scale);
    for i in 0..n {
        r.set(i, i, u);
    }
    DensityMatrix::new(r, rho.trace_tol())
}
