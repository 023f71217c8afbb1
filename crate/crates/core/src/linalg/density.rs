use super::eigen::eigvalsh;
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

/// A validated multipartite density matrix.
///
/// `dims` lists the local dimensions `d_1..d_N`; the basis is the row-major
/// product basis with party 0 as the most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

pub(crate) fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::BadSubset("at least one subsystem is required".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::BadDimension(d));
    }
    Ok(dims.iter().product())
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity under the default
    /// numeric policy.
    pub fn new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let total = check_dims(&dims)?;
        if mat.rows() != total || mat.cols() != total {
            return Err(Error::DimMismatch {
                expected: format!("{total}x{total} for dims {dims:?}"),
                found: format!("{}x{}", mat.rows(), mat.cols()),
            });
        }
        let policy = NumericPolicy::DEFAULT;
        let residual = mat.hermitian_residual();
        if residual > policy.hermitian_tol {
            return Err(Error::NotHermitian { residual });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > policy.trace_tol {
            return Err(Error::NotUnitTrace { trace });
        }
        let min_eigenvalue = eigvalsh(&mat)?[0];
        if min_eigenvalue < -policy.psd_tol {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self { dims, mat })
    }

    /// Symmetrises and trace-normalises `mat`, then validates positivity.
    pub fn from_unnormalized(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let residual = mat.hermitian_residual();
        if residual > NumericPolicy::DEFAULT.eig_input_tol * mat.max_abs().max(1.0) {
            return Err(Error::NotHermitian { residual });
        }
        let h = mat.hermitian_part();
        let trace = h.trace().re;
        if !(trace > 0.0) {
            return Err(Error::NotUnitTrace { trace });
        }
        Self::new(dims, h.scale_real(1.0 / trace))
    }

    /// For matrices produced by trusted internal pipelines (conjugations of
    /// valid states): symmetrise and renormalise without an eigensolve.
    pub(crate) fn from_trusted(dims: Vec<usize>, mat: ComplexMatrix) -> Self {
        let h = mat.hermitian_part();
        let trace = h.trace().re;
        Self { dims, mat: h.scale_real(1.0 / trace) }
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let total = check_dims(&dims)?;
        Ok(Self { mat: ComplexMatrix::identity(total).scale_real(1.0 / total as f64), dims })
    }

    /// `|psi><psi|` for a (not necessarily normalised) state vector.
    pub fn pure(dims: Vec<usize>, psi: &[C64]) -> Result<Self> {
        let total = check_dims(&dims)?;
        if psi.len() != total {
            return Err(Error::DimMismatch { expected: total.to_string(), found: psi.len().to_string() });
        }
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm > 0.0) {
            return Err(Error::BadParameter("zero state vector".into()));
        }
        let mat = ComplexMatrix::from_fn(total, total, |i, j| psi[i] * psi[j].conj() / norm);
        Ok(Self { dims, mat })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_parties(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigvalsh(&self.mat).expect("density matrices are Hermitian")
    }

    /// Tr(rho * op) for a Hermitian observable on the full space.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<f64> {
        if op.rows() != self.dim() || op.cols() != self.dim() {
            return Err(Error::DimMismatch {
                expected: format!("{0}x{0}", self.dim()),
                found: format!("{}x{}", op.rows(), op.cols()),
            });
        }
        real_expectation(self.mat.trace_product(op))
    }

    pub fn check_party(&self, party: usize) -> Result<()> {
        if party >= self.dims.len() {
            return Err(Error::BadSubset(format!("party {party} out of range for {} parties", self.dims.len())));
        }
        Ok(())
    }
}

/// Drops the imaginary part of an expectation value, refusing residues above
/// the policy tolerance.
pub(crate) fn real_expectation(z: C64) -> Result<f64> {
    if z.im.abs() > NumericPolicy::DEFAULT.imag_residue_tol {
        return Err(Error::NotHermitian { residual: z.im.abs() });
    }
    Ok(z.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rejects_bad_matrices() {
        let bad_trace = ComplexMatrix::identity(4);
        assert!(matches!(DensityMatrix::new(vec![2, 2], bad_trace), Err(Error::NotUnitTrace { .. })));
        let neg = ComplexMatrix::from_diag(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(vec![2], neg), Err(Error::NotPsd { .. })));
        let nh = ComplexMatrix::from_real(2, 2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(matches!(DensityMatrix::new(vec![2], nh), Err(Error::NotHermitian { .. })));
        let mm = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(DensityMatrix::new(vec![2, 3], mm.clone()), Err(Error::DimMismatch { .. })));
        assert!(matches!(DensityMatrix::new(vec![4, 1], mm), Err(Error::BadDimension(1))));
    }

    #[test]
    fn pure_state_is_normalised() {
        let psi = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let rho = DensityMatrix::pure(vec![2, 2], &psi).unwrap();
        assert!((rho.mat().trace().re - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::new(rho.dims().to_vec(), rho.mat().clone()).is_ok());
    }
}
