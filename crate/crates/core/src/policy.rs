//! Numeric tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// All tolerances and floors used by the library, in one place.
///
/// Reports echo this record so that a verdict can be audited against the
/// thresholds that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericPolicy {
    /// Max |rho - rho^dagger| accepted for a density matrix.
    pub hermitian_tol: f64,
    /// Max |Tr rho - 1| accepted for a density matrix.
    pub trace_tol: f64,
    /// Most negative eigenvalue accepted for a density matrix.
    pub psd_tol: f64,
    /// Hermiticity tolerance for eigensolver input.
    pub eig_input_tol: f64,
    /// Relative eigenvalue floor below which inverse powers are refused.
    pub singular_floor: f64,
    /// Relative eigenvalue floor for the full-rank precondition of the normal form.
    pub rank_floor: f64,
    /// Frobenius residual at which the normal-form iteration stops.
    pub nf_tol: f64,
    /// Maximum number of normal-form sweeps.
    pub nf_max_sweeps: usize,
    /// Largest local Bloch norm accepted as "in normal form".
    pub normal_form_bloch_tol: f64,
    /// Largest imaginary residue tolerated in an expectation value.
    pub imag_residue_tol: f64,
    /// Partial-transpose eigenvalues below `-ppt_tol` count as negative.
    pub ppt_tol: f64,
}

impl NumericPolicy {
    pub const DEFAULT: NumericPolicy = NumericPolicy {
        hermitian_tol: 1e-12,
        trace_tol: 1e-12,
        psd_tol: 1e-10,
        eig_input_tol: 1e-10,
        singular_floor: 1e-12,
        rank_floor: 1e-9,
        nf_tol: 1e-9,
        nf_max_sweeps: 500,
        normal_form_bloch_tol: 1e-6,
        imag_residue_tol: 1e-10,
        ppt_tol: 1e-10,
    };
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self::DEFAULT
    }
}
