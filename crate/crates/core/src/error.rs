use thiserror::Error;

use crate::normalform::NormalFormResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("matrix is singular (min eigenvalue {min_eigenvalue:e} below floor {floor:e})")]
    SingularMatrix { min_eigenvalue: f64, floor: f64 },
    #[error("bad party subset: {0}")]
    BadSubset(String),
    #[error("bad dimension {0}: subsystem dimensions must be at least 2")]
    BadDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: String, found: String },
    #[error("matrix is not orthogonal (max |r r^T - I| = {residual:e})")]
    NotOrthogonal { residual: f64 },
    #[error("incomplete Bloch coefficients: {0}")]
    IncompleteCoefficients(String),
    #[error("reduced state of party {party} is singular (min eigenvalue {min_eigenvalue:e})")]
    SingularReduction { party: usize, min_eigenvalue: f64 },
    #[error("state is not full rank (min eigenvalue {min_eigenvalue:e} <= floor {floor:e})")]
    NotFullRank { min_eigenvalue: f64, floor: f64 },
    #[error("normal form did not converge after {} sweeps (residual {:e})", .best.iterations, .best.residual)]
    NoConvergence { best: Box<NormalFormResult> },
    #[error("state is not in normal form (max local Bloch norm {bloch_norm:e})")]
    NotNormalForm { bloch_norm: f64 },
    #[error("detection is {detected} at both scan endpoints")]
    NoSignChange { detected: bool },
    #[error("invalid local orthogonal observables: {0}")]
    BadLoo(String),
    #[error("correlation-matrix criterion not violated (margin {margin:e}); no witness guarantee")]
    NotDetected { margin: f64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotUnitTrace { .. } => "NotUnitTrace",
            Error::NotPsd { .. } => "NotPsd",
            Error::InvalidShape(_) => "InvalidShape",
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::BadSubset(_) => "BadSubset",
            Error::BadDimension(_) => "BadDimension",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::NotOrthogonal { .. } => "NotOrthogonal",
            Error::IncompleteCoefficients(_) => "IncompleteCoefficients",
            Error::SingularReduction { .. } => "SingularReduction",
            Error::NotFullRank { .. } => "NotFullRank",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotNormalForm { .. } => "NotNormalForm",
            Error::NoSignChange { .. } => "NoSignChange",
            Error::BadLoo(_) => "BadLoo",
            Error::NotDetected { .. } => "NotDetected",
            Error::BadParameter(_) => "BadParameter",
        }
    }

    /// True when the failure is caused by malformed input rather than by the
    /// numerical method.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::SingularMatrix { .. }
                | Error::SingularReduction { .. }
                | Error::NotFullRank { .. }
                | Error::NoConvergence { .. }
                | Error::NotNormalForm { .. }
                | Error::NoSignChange { .. }
                | Error::NotDetected { .. }
        )
    }
}
