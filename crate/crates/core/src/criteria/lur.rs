use serde::{Deserialize, Serialize};

use crate::basis::{gellmann, loo_set, rotate_loos, LooSet};
use crate::bloch::correlation_matrix;
use crate::error::{Error, Result};
use crate::linalg::{embed_operator, svd, ComplexMatrix, DensityMatrix, RealMatrix};

use super::correlation::cm_bound;
use super::{require_bipartite, CriterionId, CriterionVerdict};

/// Local uncertainty relation
///
/// ```text
/// 1 - sum_k <G_k^A (x) G_k^B> - 1/2 sum_k <G_k^A (x) I - I (x) G_k^B>^2 >= 0
/// ```
///
/// The shorter set is padded with zero observables. The statistic is the
/// negated left-hand side, so detection means the relation is violated.
pub fn lur_check(rho: &DensityMatrix, loos_a: &LooSet, loos_b: &LooSet) -> Result<CriterionVerdict> {
    require_bipartite(rho, "lur")?;
    let (m, n) = (rho.dims()[0], rho.dims()[1]);
    if loos_a.dim() != m || loos_b.dim() != n {
        return Err(Error::DimMismatch {
            expected: format!("observables of dimensions ({m}, {n})"),
            found: format!("({}, {})", loos_a.dim(), loos_b.dim()),
        });
    }
    let len = loos_a.len().max(loos_b.len());
    let (a, b) = (loos_a.padded(len)?, loos_b.padded(len)?);
    let dims = rho.dims();
    let mut lhs = 1.0;
    for (ga, gb) in a.observables().iter().zip(b.observables()) {
        let ea = embed_operator(ga, &[0], dims)?;
        let eb = embed_operator(gb, &[1], dims)?;
        let corr = rho.expectation(&ea.matmul(&eb))?;
        let diff = rho.expectation(&(&ea - &eb))?;
        lhs -= corr + 0.5 * diff * diff;
    }
    Ok(CriterionVerdict::new(CriterionId::Lur, -lhs, 0.0, false, None))
}

fn real_rotation(m: &ComplexMatrix) -> RealMatrix {
    // transpose of the real part: row k holds singular vector k
    RealMatrix::from_fn(m.cols(), m.rows(), |k, l| m[(l, k)].re)
}

/// Observables aligned with the singular vectors of the correlation matrix,
/// so that the k-th pair carries the k-th singular value.
pub fn adapted_loos(rho: &DensityMatrix) -> Result<(LooSet, LooSet)> {
    require_bipartite(rho, "lur")?;
    let (m, n) = (rho.dims()[0], rho.dims()[1]);
    let t = correlation_matrix(rho, &gellmann(m, 1.0)?, &gellmann(n, 1.0)?)?;
    let dec = svd(&t.t.to_complex());
    let a = rotate_loos(&loo_set(m)?, &real_rotation(&dec.u))?;
    let b = rotate_loos(&loo_set(n)?, &real_rotation(&dec.v))?;
    Ok((a, b))
}

/// LUR with [`adapted_loos`].
pub fn lur_check_adapted(rho: &DensityMatrix) -> Result<CriterionVerdict> {
    let (a, b) = adapted_loos(rho)?;
    lur_check(rho, &a, &b)
}

/// The two normal-form bounds on `sum xi_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LurBoundComparison {
    /// `sqrt(MN(M-1)(N-1))`
    pub cm_bound: f64,
    /// `MN - (M+N)/2`
    pub lur_bound: f64,
    /// Strictly smaller CM bound.
    pub cm_tighter: bool,
}

pub fn lur_nf_bound_check(m: usize, n: usize) -> Result<LurBoundComparison> {
    if let Some(&d) = [m, n].iter().find(|&&d| d < 2) {
        return Err(Error::BadDimension(d));
    }
    let cm = cm_bound(m, n);
    let lur = (m * n) as f64 - (m + n) as f64 / 2.0;
    Ok(LurBoundComparison { cm_bound: cm, lur_bound: lur, cm_tighter: cm < lur })
}
