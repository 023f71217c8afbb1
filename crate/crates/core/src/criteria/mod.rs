//! Separability criteria and a bisection threshold scanner.
//!
//! Every check returns a [`CriterionVerdict`] whose `detected` flag means
//! "entanglement certified": the statistic strictly exceeds the bound.

mod correlation;
mod lur;
mod scan;
mod spectral;

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DensityMatrix;
use crate::normalform::{normal_form_with, NormalFormOptions};

pub use correlation::{cm_all_subsets, cm_bipartite, cm_bound, cm_general, gcm_bound};
pub use lur::{adapted_loos, lur_check, lur_check_adapted, lur_nf_bound_check, LurBoundComparison};
pub use scan::{scan_threshold, ScanResult};
pub use spectral::{ppt_check, realignment_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionId {
    /// Bipartite correlation-matrix criterion.
    Cm,
    /// Generalised correlation-tensor criterion over party subsets.
    Gcm,
    /// Local uncertainty relation with local orthogonal observables.
    Lur,
    /// Positive partial transpose.
    Ppt,
    /// Realignment (computable cross norm).
    Ccnr,
}

impl CriterionId {
    pub const ALL: [CriterionId; 5] = [CriterionId::Cm, CriterionId::Gcm, CriterionId::Lur, CriterionId::Ppt, CriterionId::Ccnr];

    pub fn as_str(self) -> &'static str {
        match self {
            CriterionId::Cm => "cm",
            CriterionId::Gcm => "gcm",
            CriterionId::Lur => "lur",
            CriterionId::Ppt => "ppt",
            CriterionId::Ccnr => "ccnr",
        }
    }

    /// Whether the criterion is defined only for two parties.
    pub fn bipartite_only(self) -> bool {
        matches!(self, CriterionId::Cm | CriterionId::Lur | CriterionId::Ccnr)
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CriterionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::BadParameter(format!("unknown criterion '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub criterion: CriterionId,
    pub statistic: f64,
    pub bound: f64,
    pub detected: bool,
    /// `statistic - bound`; positive exactly when `detected`.
    pub margin: f64,
    pub used_normal_form: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
}

impl CriterionVerdict {
    pub fn new(criterion: CriterionId, statistic: f64, bound: f64, used_normal_form: bool, subset: Option<Vec<usize>>) -> Self {
        let margin = statistic - bound;
        Self { criterion, statistic, bound, detected: margin > 0.0, margin, used_normal_form, subset }
    }
}

/// The state itself, or its normal form when `use_nf` is set.
pub(crate) fn prepared(rho: &DensityMatrix, use_nf: bool) -> Result<Cow<'_, DensityMatrix>> {
    if use_nf {
        Ok(Cow::Owned(normal_form_with(rho, NormalFormOptions::default())?.nf))
    } else {
        Ok(Cow::Borrowed(rho))
    }
}

fn require_bipartite(rho: &DensityMatrix, what: &str) -> Result<()> {
    if rho.num_parties() != 2 {
        return Err(Error::BadSubset(format!("{what} needs a bipartite state, got {} parties", rho.num_parties())));
    }
    Ok(())
}

/// All verdicts of one criterion on a state: one per subset for `gcm`, one
/// per party for `ppt`, a single verdict otherwise. LUR uses the
/// correlation-adapted observables.
pub fn evaluate(rho: &DensityMatrix, criterion: CriterionId, use_nf: bool) -> Result<Vec<CriterionVerdict>> {
    if criterion.bipartite_only() {
        require_bipartite(rho, criterion.as_str())?;
    }
    if criterion == CriterionId::Gcm {
        return cm_all_subsets(rho, use_nf);
    }
    let state = prepared(rho, use_nf)?;
    let mut out = match criterion {
        CriterionId::Cm => vec![cm_bipartite(&state, false)?],
        CriterionId::Lur => vec![lur_check_adapted(&state)?],
        CriterionId::Ccnr => vec![realignment_check(&state)?],
        CriterionId::Ppt => (0..state.num_parties()).map(|p| ppt_check(&state, p)).collect::<Result<_>>()?,
        CriterionId::Gcm => unreachable!(),
    };
    for v in &mut out {
        v.used_normal_form = use_nf;
    }
    Ok(out)
}

/// True when any verdict certifies entanglement.
pub fn any_detected(verdicts: &[CriterionVerdict]) -> bool {
    verdicts.iter().any(|v| v.detected)
}
