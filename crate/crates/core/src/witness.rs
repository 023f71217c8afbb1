//! Entanglement witnesses built from local orthogonal observables.
//!
//! Bipartite: `W = I - alpha sum_k G_k^A (x) G_k^B` with
//! `alpha = sqrt(MN) / (sqrt((M-1)(N-1)) + 1)`.
//!
//! Multipartite on a party subset: `W = I - beta sum_k G_k^{mu_1} (x) .. (x)
//! G_k^{mu_M}` with `beta = sqrt(prod d) / (1 + sqrt(prod (d - 1)))`,
//! tensored with the identity on the remaining parties.
//!
//! Observable sets of smaller parties are padded with zero observables.

use serde::{Deserialize, Serialize};

use crate::basis::{loo_set, LooSet};
use crate::criteria::{adapted_loos, cm_bipartite};
use crate::error::{Error, Result};
use crate::linalg::{check_subset, embed_operator, herm_eig, kron_all, ComplexMatrix, DensityMatrix};
use crate::policy::NumericPolicy;
use crate::states::max_entangled;

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub mat: ComplexMatrix,
    /// `alpha` (bipartite) or `beta` (multipartite).
    pub coefficient: f64,
    /// How the observables were chosen.
    pub provenance: String,
    pub subset: Vec<usize>,
    pub full_dims: Vec<usize>,
    pub min_eigenvalue: f64,
}

/// Serializable digest of a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub coefficient: f64,
    pub provenance: String,
    pub subset: Vec<usize>,
    pub full_dims: Vec<usize>,
    pub min_eigenvalue: f64,
}

impl Witness {
    pub fn summary(&self) -> WitnessSummary {
        WitnessSummary {
            coefficient: self.coefficient,
            provenance: self.provenance.clone(),
            subset: self.subset.clone(),
            full_dims: self.full_dims.clone(),
            min_eigenvalue: self.min_eigenvalue,
        }
    }

    pub fn has_negative_eigenvalue(&self) -> bool {
        self.min_eigenvalue < -NumericPolicy::DEFAULT.psd_tol
    }
}

pub fn bipartite_alpha(m: usize, n: usize) -> f64 {
    ((m * n) as f64).sqrt() / ((((m - 1) * (n - 1)) as f64).sqrt() + 1.0)
}

pub fn multipartite_beta(dims: &[usize]) -> f64 {
    let prod: f64 = dims.iter().map(|&d| d as f64).product();
    let prod_minus: f64 = dims.iter().map(|&d| (d - 1) as f64).product();
    prod.sqrt() / (1.0 + prod_minus.sqrt())
}

/// `I - coefficient * sum_k (x)_i G_k^{(i)}` over observable sets padded to a
/// common length.
fn loo_operator(sets: &[&LooSet], coefficient: f64) -> Result<ComplexMatrix> {
    let len = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    let padded = sets.iter().map(|s| s.padded(len)).collect::<Result<Vec<_>>>()?;
    let dim: usize = sets.iter().map(|s| s.dim()).product();
    let mut sum = ComplexMatrix::zeros(dim, dim);
    for k in 0..len {
        if padded.iter().any(|s| s.observables()[k].max_abs() == 0.0) {
            continue;
        }
        sum = &sum + &kron_all(padded.iter().map(|s| &s.observables()[k]));
    }
    Ok(&ComplexMatrix::identity(dim) - &sum.scale_real(coefficient))
}

fn finish(mat: ComplexMatrix, coefficient: f64, provenance: String, subset: Vec<usize>, full_dims: Vec<usize>) -> Result<Witness> {
    let mat = mat.hermitian_part();
    let min_eigenvalue = herm_eig(&mat)?.min();
    Ok(Witness { mat, coefficient, provenance, subset, full_dims, min_eigenvalue })
}

/// Bipartite witness from one observable set per side. The spectrum is
/// recorded but not required to have a negative eigenvalue.
pub fn bipartite_witness(loos_a: &LooSet, loos_b: &LooSet) -> Result<Witness> {
    let (m, n) = (loos_a.dim(), loos_b.dim());
    let alpha = bipartite_alpha(m, n);
    let mat = loo_operator(&[loos_a, loos_b], alpha)?;
    finish(mat, alpha, "explicit observables".into(), vec![0, 1], vec![m, n])
}

/// Witness with observables aligned to the singular vectors of the state's
/// correlation matrix. Its expectation on `rho` is
/// `(sqrt(MN(M-1)(N-1)) - ||T||_KF) / (sqrt(MN)(sqrt((M-1)(N-1)) + 1))`,
/// negative exactly when the CM criterion is violated.
pub fn witness_from_state(rho: &DensityMatrix) -> Result<Witness> {
    let verdict = cm_bipartite(rho, false)?;
    if !verdict.detected {
        return Err(Error::NotDetected { margin: verdict.margin });
    }
    let (a, b) = adapted_loos(rho)?;
    let mut w = bipartite_witness(&a, &b)?;
    w.provenance = "observables from the singular value decomposition of the state's correlation matrix".into();
    Ok(w)
}

/// Witness adapted to the maximally entangled state of `m (x) n`.
pub fn canonical_bipartite(m: usize, n: usize) -> Result<Witness> {
    let mut w = witness_from_state(&max_entangled(m, n)?)?;
    w.provenance = format!("observables adapted to the maximally entangled state of {m}x{n}");
    Ok(w)
}

/// Multipartite witness on `subset`, one observable set per member (in
/// subset order), embedded into `full_dims`.
pub fn multipartite_witness(subset: &[usize], loos: &[LooSet], full_dims: &[usize]) -> Result<Witness> {
    check_subset(subset, full_dims.len())?;
    if subset.len() < 2 {
        return Err(Error::BadSubset(format!("multipartite witness needs at least 2 parties, got {subset:?}")));
    }
    if loos.len() != subset.len() {
        return Err(Error::BadLoo(format!("{} observable sets for {} parties", loos.len(), subset.len())));
    }
    for (&p, set) in subset.iter().zip(loos) {
        if set.dim() != full_dims[p] {
            return Err(Error::BadLoo(format!("party {p} has dimension {}, observables have {}", full_dims[p], set.dim())));
        }
    }
    let dims: Vec<usize> = subset.iter().map(|&p| full_dims[p]).collect();
    let beta = multipartite_beta(&dims);
    let refs: Vec<&LooSet> = loos.iter().collect();
    let local = loo_operator(&refs, beta)?;
    let mat = embed_operator(&local, subset, full_dims)?;
    finish(mat, beta, "explicit observables".into(), subset.to_vec(), full_dims.to_vec())
}

/// Multipartite witness over all parties with the standard observables
/// (`I/sqrt(d)` and orthonormal Gell-Mann matrices). Fails when the result
/// has no negative eigenvalue and so witnesses nothing.
pub fn canonical_multipartite(dims: &[usize]) -> Result<Witness> {
    let loos = dims.iter().map(|&d| loo_set(d)).collect::<Result<Vec<_>>>()?;
    let subset: Vec<usize> = (0..dims.len()).collect();
    let mut w = multipartite_witness(&subset, &loos, dims)?;
    if !w.has_negative_eigenvalue() {
        return Err(Error::BadLoo(format!(
            "standard observables give no negative eigenvalue for dims {dims:?} (min {:e})",
            w.min_eigenvalue
        )));
    }
    w.provenance = "standard observables: I/sqrt(d) and orthonormal Gell-Mann matrices".into();
    Ok(w)
}

/// `Tr(rho W)`.
pub fn expectation(w: &Witness, rho: &DensityMatrix) -> Result<f64> {
    if rho.dims() != w.full_dims.as_slice() {
        return Err(Error::DimMismatch { expected: format!("dims {:?}", w.full_dims), found: format!("dims {:?}", rho.dims()) });
    }
    rho.expectation(&w.mat)
}

pub fn min_eig(w: &Witness) -> f64 {
    w.min_eigenvalue
}
