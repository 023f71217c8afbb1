//! Machine-readable run reports (schema `sepscan-report/1`).
//!
//! Reports carry no timestamps, so identical invocations produce identical
//! bytes.

use serde::{Deserialize, Serialize};

use sepscan_core::criteria::{CriterionVerdict, ScanResult};
use sepscan_core::normalform::NormalFormResult;
use sepscan_core::states::StateFamily;
use sepscan_core::witness::WitnessSummary;
use sepscan_core::NumericPolicy;

use crate::io::MatrixFile;
use crate::CliError;

pub const SCHEMA: &str = "sepscan-report/1";
pub const BATCH_SCHEMA: &str = "sepscan-batch/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InputDescriptor {
    File { path: String },
    Family {
        #[serde(flatten)]
        family: StateFamily,
        p: f64,
    },
    /// Scans cover a whole family rather than one member.
    FamilyScan {
        #[serde(flatten)]
        family: StateFamily,
        p_lo: f64,
        p_hi: f64,
    },
    Canonical { dims: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormSummary {
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
    pub objective_trace: Vec<f64>,
    pub filters: Vec<MatrixFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl NormalFormSummary {
    pub fn from_result(r: &NormalFormResult) -> Self {
        Self {
            converged: r.converged,
            iterations: r.iterations,
            residual: r.residual,
            objective_trace: r.objective_trace.clone(),
            filters: r.filters.iter().map(MatrixFile::from_matrix).collect(),
            output: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(flatten)]
    pub summary: WitnessSummary,
    /// `Tr(rho W)` on the supplied state, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<CriterionVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub policy: NumericPolicy,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            schema: SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input: None,
            verdicts: Vec::new(),
            detected: None,
            normal_form: None,
            scan: None,
            witness: None,
            error: None,
            policy: NumericPolicy::DEFAULT,
        }
    }

    pub fn fail(&mut self, err: &CliError) {
        self.error = Some(ErrorReport { kind: err.kind.clone(), message: err.message.clone() });
    }

    /// Plain-text rendering for terminals.
    pub fn human(&self) -> String {
        let mut out = Vec::new();
        for v in &self.verdicts {
            let subset = v.subset.as_ref().map(|s| format!(" {s:?}")).unwrap_or_default();
            out.push(format!(
                "{}{subset}: statistic {:.6} bound {:.6} margin {:+.6} {}{}",
                v.criterion,
                v.statistic,
                v.bound,
                v.margin,
                if v.detected { "ENTANGLED" } else { "not detected" },
                if v.used_normal_form { " (normal form)" } else { "" },
            ));
        }
        if let Some(d) = self.detected {
            out.push(format!("detected: {d}"));
        }
        if let Some(nf) = &self.normal_form {
            out.push(format!("normal form: converged {} after {} sweeps, residual {:.3e}", nf.converged, nf.iterations, nf.residual));
            if let Some(path) = &nf.output {
                out.push(format!("normal form written to {path}"));
            }
        }
        if let Some(s) = &self.scan {
            out.push(format!("threshold {}: p* = {:.6} (bracket [{:.6}, {:.6}], {} evaluations)", s.criterion, s.threshold, s.lo, s.hi, s.evaluations));
        }
        if let Some(w) = &self.witness {
            out.push(format!("witness coefficient {:.6}, min eigenvalue {:.12}", w.summary.coefficient, w.summary.min_eigenvalue));
            out.push(format!("observables: {}", w.summary.provenance));
            if let Some(e) = w.expectation {
                out.push(format!("expectation on state: {e:.12}"));
            }
        }
        if let Some(e) = &self.error {
            out.push(format!("error ({}): {}", e.kind, e.message));
        }
        out.join("\n")
    }
}

/// Reports of a `check --batch` run, ordered by file name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchReport {
    pub schema: String,
    pub tool_version: String,
    pub reports: Vec<Report>,
}
