//! Dense complex linear algebra for small quantum-information workloads.

mod density;
mod eigen;
mod matrix;
mod reshuffle;
mod svd;

pub use density::DensityMatrix;
pub(crate) use density::{check_dims, real_expectation};
pub use eigen::{eigvalsh, herm_det, herm_eig, herm_power, HermEig};
pub use matrix::{kron, kron_all, ComplexMatrix, RealMatrix, C64};
pub use reshuffle::{
    check_subset, compose, digits, embed_operator, partial_trace, partial_trace_matrix, partial_transpose,
    partial_transpose_matrix, realign, realign_matrix,
};
pub use svd::{singular_values, svd, trace_norm, Svd};
