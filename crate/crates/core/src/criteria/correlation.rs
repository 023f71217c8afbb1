use crate::basis::{gellmann, GeneratorBasis};
use crate::bloch::{correlation_matrix, correlation_tensor, party_subsets, tensor_kf_norm};
use crate::error::{Error, Result};
use crate::linalg::{check_subset, trace_norm, DensityMatrix};

use super::{prepared, require_bipartite, CriterionId, CriterionVerdict};

/// `sqrt(MN(M-1)(N-1))`
pub fn cm_bound(m: usize, n: usize) -> f64 {
    let (m, n) = (m as f64, n as f64);
    (m * n * (m - 1.0) * (n - 1.0)).sqrt()
}

/// `sqrt(prod_k d_k(d_k - 1) / 2^M)` for a subset of dimensions.
pub fn gcm_bound(dims: &[usize]) -> f64 {
    let prod: f64 = dims.iter().map(|&d| (d * (d - 1)) as f64).product();
    (prod / 2f64.powi(dims.len() as i32)).sqrt()
}

/// Trace norm of the orthonormal-basis correlation matrix against
/// `sqrt(MN(M-1)(N-1))`.
pub fn cm_bipartite(rho: &DensityMatrix, use_nf: bool) -> Result<CriterionVerdict> {
    require_bipartite(rho, "cm")?;
    let state = prepared(rho, use_nf)?;
    let (m, n) = (state.dims()[0], state.dims()[1]);
    let t = correlation_matrix(&state, &gellmann(m, 1.0)?, &gellmann(n, 1.0)?)?;
    Ok(CriterionVerdict::new(CriterionId::Cm, trace_norm(&t.t.to_complex()), cm_bound(m, n), use_nf, None))
}

fn gcm_on(state: &DensityMatrix, subset: &[usize], used_nf: bool) -> Result<CriterionVerdict> {
    check_subset(subset, state.num_parties())?;
    if subset.len() < 2 {
        return Err(Error::BadSubset(format!("generalised CM needs at least 2 parties, got {subset:?}")));
    }
    let dims: Vec<usize> = subset.iter().map(|&p| state.dims()[p]).collect();
    let bases = dims.iter().map(|&d| gellmann(d, 2.0)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GeneratorBasis> = bases.iter().collect();
    let t = correlation_tensor(state, subset, &refs)?;
    Ok(CriterionVerdict::new(CriterionId::Gcm, tensor_kf_norm(&t), gcm_bound(&dims), used_nf, Some(subset.to_vec())))
}

/// Tensor KF norm over `subset` against the generalised bound. With
/// `use_nf` the whole state is filtered first.
pub fn cm_general(rho: &DensityMatrix, subset: &[usize], use_nf: bool) -> Result<CriterionVerdict> {
    check_subset(subset, rho.num_parties())?;
    let state = prepared(rho, use_nf)?;
    gcm_on(&state, subset, use_nf)
}

/// Generalised CM over every subset of at least two parties, by size then
/// lexicographically. The normal form is computed once.
pub fn cm_all_subsets(rho: &DensityMatrix, use_nf: bool) -> Result<Vec<CriterionVerdict>> {
    if rho.num_parties() < 2 {
        return Err(Error::BadSubset("generalised CM needs at least 2 parties".into()));
    }
    let state = prepared(rho, use_nf)?;
    party_subsets(state.num_parties(), 2).iter().map(|s| gcm_on(&state, s, use_nf)).collect()
}
