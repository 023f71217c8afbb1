use crate::error::Result;
use crate::linalg::{eigvalsh, partial_transpose, realign, trace_norm, DensityMatrix};
use crate::policy::NumericPolicy;

use super::{require_bipartite, CriterionId, CriterionVerdict};

/// Negated smallest eigenvalue of the partial transpose on `party`, against
/// the PSD tolerance.
pub fn ppt_check(rho: &DensityMatrix, party: usize) -> Result<CriterionVerdict> {
    let min = eigvalsh(&partial_transpose(rho, party)?)?[0];
    Ok(CriterionVerdict::new(CriterionId::Ppt, -min, NumericPolicy::DEFAULT.ppt_tol, false, Some(vec![party])))
}

/// Trace norm of the realigned matrix against 1.
pub fn realignment_check(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    require_bipartite(rho, "ccnr")?;
    Ok(CriterionVerdict::new(CriterionId::Ccnr, trace_norm(&realign(rho)?), 1.0, false, None))
}
