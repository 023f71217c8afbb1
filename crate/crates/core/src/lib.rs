//! Separability analysis of finite-dimensional multipartite quantum states.
//!
//! The crate transforms strictly positive density matrices to their local
//! filtering (SLOCC) normal form, evaluates correlation-matrix and
//! correlation-tensor separability criteria with and without that
//! transformation, and builds entanglement witnesses from local orthogonal
//! observables.
//!
//! Party indices are 0-based throughout. Flat basis indices are row-major
//! with party 0 as the most significant digit.

pub mod basis;
pub mod bloch;
pub mod criteria;
pub mod error;
pub mod linalg;
pub mod normalform;
pub mod policy;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, RealMatrix, C64};
pub use policy::NumericPolicy;
