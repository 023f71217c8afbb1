use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;

use super::{any_detected, evaluate, CriterionId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub criterion: CriterionId,
    pub used_normal_form: bool,
    /// Midpoint of the final bracket.
    pub threshold: f64,
    /// Final bracket, `hi - lo < tol`.
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
    /// Number of family members evaluated.
    pub evaluations: usize,
}

/// Bisects the detection boundary of `criterion` over a one-parameter
/// family. Detection must differ at the two endpoints; monotonicity in
/// between is assumed, not checked.
pub fn scan_threshold<F>(family: F, criterion: CriterionId, use_nf: bool, p_lo: f64, p_hi: f64, tol: f64) -> Result<ScanResult>
where
    F: Fn(f64) -> Result<DensityMatrix>,
{
    if !(p_lo < p_hi) || !(tol > 0.0) {
        return Err(Error::BadParameter(format!("need p_lo < p_hi and tol > 0, got [{p_lo}, {p_hi}], tol {tol}")));
    }
    let detect = |p: f64| -> Result<bool> { Ok(any_detected(&evaluate(&family(p)?, criterion, use_nf)?)) };
    let (mut lo, mut hi) = (p_lo, p_hi);
    let at_lo = detect(lo)?;
    if detect(hi)? == at_lo {
        return Err(Error::NoSignChange { detected: at_lo });
    }
    let mut evaluations = 2;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if detect(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        evaluations += 1;
    }
    Ok(ScanResult { criterion, used_normal_form: use_nf, threshold: 0.5 * (lo + hi), lo, hi, tol, evaluations })
}
