use alloc::vec::Vec;

use crate::error::Result;
use crate::matrix::{CooMatrix, SparseSymMatrix};

/// A general matrix `B` and its symmetric lift `[[0, B], [Bᵀ, 0]]`.
///
/// For sign vectors `x`, `y`, `⟨x⊕y, A′(x⊕y)⟩ = 2⟨x, By⟩`, so MaxQP on the
/// lift computes twice the `∞→1` norm of `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedMatrix {
    pub base: CooMatrix,
    pub lifted: SparseSymMatrix,
}

impl LiftedMatrix {
    pub fn rows(&self) -> usize {
        self.base.rows()
    }

    pub fn cols(&self) -> usize {
        self.base.cols()
    }

    pub fn dim(&self) -> usize {
        self.lifted.dim()
    }

    /// `⟨x, By⟩` for the split `z = x ⊕ y`.
    pub fn split_value(&self, z: &[f64]) -> f64 {
        let (x, y) = z.split_at(self.rows());
        self.base.bilinear(x, y)
    }
}

pub fn lift(base: &CooMatrix) -> Result<LiftedMatrix> {
    let r = base.rows();
    let entries: Vec<_> = base
        .entries()
        .iter()
        .map(|&(i, j, v)| (i, r + j, v))
        .collect();
    let lifted = SparseSymMatrix::from_entries(r + base.cols(), entries)?;
    Ok(LiftedMatrix {
        base: base.clone(),
        lifted,
    })
}
