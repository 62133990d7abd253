//! Sparse and dense symmetric linear algebra.

mod dense;
mod eigen;
mod gibbs;
mod market;
mod norm;
mod sparse;

pub use dense::{DenseMatrix, DensityMatrix, DEFAULT_TRACE_TOL};
pub use eigen::{symmetric_eigen, trace_distance, trace_norm, SymmetricEigen};
pub use gibbs::{
    exact_gibbs, exact_gibbs_with_log_partition, gibbs_order, gibbs_squarings, trace_product,
    truncated_gibbs, truncation_order, Hamiltonian, DEFAULT_DENSE_CAP,
};
pub use market::{parse_matrix_market, parse_matrix_market_general, write_matrix_market};
pub use norm::{operator_norm, spectral_norm_rect, DEFAULT_NORM_TOL};
pub use sparse::{CooMatrix, SparseSymMatrix};
