use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{CooMatrix, SparseSymMatrix};

/// Largest dimension the exhaustive searches accept.
pub const BRUTE_FORCE_CAP: usize = 24;

/// `max_{x ∈ {±1}ⁿ} xᵀAx` with its maximizer.
///
/// Fixes `x₁ = +1` (the objective is even) and walks the remaining `2ⁿ⁻¹`
/// patterns in Gray-code order, updating the local fields `Ax` after each
/// flip. Among maximizers the lexicographically largest vector wins, with
/// `+1 > −1`.
pub fn brute_force_maxqp(a: &SparseSymMatrix) -> Result<(f64, Vec<i8>)> {
    let n = a.dim();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let tol = 1e-12 * a.ell1_norm().max(1.0);
    let mut x = vec![1i8; n];
    let xf = vec![1.0; n];
    let mut field = a.matvec(&xf)?;
    let diag = a.diagonal();
    let mut value: f64 = field.iter().sum();
    let mut best = value;
    let mut best_x = x.clone();

    for step in 1u64..(1u64 << (n - 1)) {
        // Bit flipped at this Gray-code step, shifted past the fixed x₁.
        let k = step.trailing_zeros() as usize + 1;
        let xk = f64::from(x[k]);
        value -= 4.0 * xk * (field[k] - diag[k] * xk);
        for (j, v) in a.row(k) {
            field[j] -= 2.0 * v * xk;
        }
        x[k] = -x[k];
        if value > best + tol || (value >= best - tol && x > best_x) {
            best = value.max(best);
            best_x.copy_from_slice(&x);
        }
    }
    let xf: Vec<f64> = best_x.iter().map(|&s| f64::from(s)).collect();
    Ok((a.quadratic_form(&xf), best_x))
}

/// `‖B‖_{∞→1} = max_{x, y ∈ {±1}} ⟨x, By⟩ = max_y ‖By‖₁`.
///
/// Enumerates `y` with `y₁ = +1` in Gray-code order.
pub fn brute_force_inf1(b: &CooMatrix) -> Result<f64> {
    let cols = b.cols();
    if cols > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n: cols,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); cols];
    for &(r, c, v) in b.entries() {
        columns[c].push((r, v));
    }
    let mut y = vec![1.0; cols];
    let mut by = b.matvec(&y)?;
    let mut best = l1(&by);
    for step in 1u64..(1u64 << (cols - 1)) {
        let k = step.trailing_zeros() as usize + 1;
        for &(r, v) in &columns[k] {
            by[r] -= 2.0 * v * y[k];
        }
        y[k] = -y[k];
        best = best.max(l1(&by));
    }
    Ok(best)
}

fn l1(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}
