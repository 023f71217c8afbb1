//! Local filtering (SLOCC) normal form of strictly positive states.
//!
//! Each sweep visits the parties in order and whitens the current reduced
//! state of that party with `F = det(rho_i)^{1/(2d)} rho_i^{-1/2}`, then
//! renormalises the trace. Each step is the exact minimiser of
//!
//! ```text
//! f(tau_1, .., tau_N) = Tr[rho (tau_1 (x) .. (x) tau_N)] / prod_i det(tau_i)^{1/d_i}
//! ```
//!
//! over one factor `tau_i = F_i^dagger F_i` with the others fixed, so the
//! objective is non-increasing across sweeps. At the fixed point every
//! reduced state is `I/d_i`, i.e. all local Bloch vectors vanish.

use crate::basis::gellmann;
use crate::bloch::{correlation_matrix, local_bloch};
use crate::error::{Error, Result};
use crate::linalg::{
    embed_operator, herm_eig, kron_all, partial_trace_matrix, singular_values, ComplexMatrix, DensityMatrix,
};
use crate::policy::NumericPolicy;

/// Output of [`normal_form`].
#[derive(Debug, Clone)]
pub struct NormalFormResult {
    /// The filtered, trace-normalised state.
    pub nf: DensityMatrix,
    /// Accumulated per-party filters; `nf = normalize((⊗F) rho (⊗F)^dagger)`.
    pub filters: Vec<ComplexMatrix>,
    /// Number of completed sweeps.
    pub iterations: usize,
    pub converged: bool,
    /// Objective value before the first sweep and after each sweep.
    pub objective_trace: Vec<f64>,
    /// max_i ||rho_i - I/d_i||_F of `nf`.
    pub residual: f64,
}

/// Tuning for [`normal_form_with`].
#[derive(Debug, Clone, Copy)]
pub struct NormalFormOptions {
    pub tol: f64,
    pub max_sweeps: usize,
    /// Relative floor on the smallest eigenvalue of the input.
    pub rank_floor: f64,
}

impl Default for NormalFormOptions {
    fn default() -> Self {
        let p = NumericPolicy::DEFAULT;
        Self { tol: p.nf_tol, max_sweeps: p.nf_max_sweeps, rank_floor: p.rank_floor }
    }
}

fn positive_definite_det(tau: &ComplexMatrix) -> Result<f64> {
    let eig = herm_eig(tau)?;
    let floor = NumericPolicy::DEFAULT.singular_floor * eig.max().abs();
    if eig.min() <= floor {
        return Err(Error::SingularMatrix { min_eigenvalue: eig.min(), floor });
    }
    Ok(eig.values.iter().product())
}

/// `Tr[rho (tau_1 (x) .. (x) tau_N)] / prod_i det(tau_i)^{1/d_i}`.
pub fn objective_f(rho: &DensityMatrix, taus: &[ComplexMatrix]) -> Result<f64> {
    if taus.len() != rho.num_parties() || taus.iter().zip(rho.dims()).any(|(t, &d)| t.rows() != d || t.cols() != d) {
        return Err(Error::DimMismatch {
            expected: format!("one square matrix per party for dims {:?}", rho.dims()),
            found: format!("{} matrices", taus.len()),
        });
    }
    let mut denom = 1.0;
    for (tau, &d) in taus.iter().zip(rho.dims()) {
        denom *= positive_definite_det(tau)?.powf(1.0 / d as f64);
    }
    let num = rho.mat().trace_product(&kron_all(taus)).re;
    Ok(num / denom)
}

/// Objective at accumulated filters, `tau_i = F_i^dagger F_i`.
fn objective_at_filters(rho: &DensityMatrix, filters: &[ComplexMatrix]) -> Result<f64> {
    let taus: Vec<ComplexMatrix> = filters.iter().map(|f| f.adjoint().matmul(f)).collect();
    objective_f(rho, &taus)
}

fn local_residual(rho: &DensityMatrix, party: usize) -> f64 {
    let d = rho.dims()[party];
    let reduced = partial_trace_matrix(rho.mat(), rho.dims(), &[party]).expect("valid party");
    (&reduced - &ComplexMatrix::identity(d).scale_real(1.0 / d as f64)).frobenius_norm()
}

/// max_i ||rho_i - I/d_i||_F
pub fn normal_form_residual(rho: &DensityMatrix) -> f64 {
    (0..rho.num_parties()).map(|p| local_residual(rho, p)).fold(0.0, f64::max)
}

/// Applies `(I (x) F (x) I) rho (I (x) F (x) I)^dagger` with trace renormalisation.
pub fn apply_local_filter(rho: &DensityMatrix, party: usize, filter: &ComplexMatrix) -> Result<DensityMatrix> {
    let op = embed_operator(filter, &[party], rho.dims())?;
    Ok(DensityMatrix::from_trusted(rho.dims().to_vec(), op.sandwich(rho.mat())))
}

/// Applies `⊗_i F_i` to the whole state with trace renormalisation.
pub fn apply_filters(rho: &DensityMatrix, filters: &[ComplexMatrix]) -> Result<DensityMatrix> {
    if filters.len() != rho.num_parties() || filters.iter().zip(rho.dims()).any(|(f, &d)| f.rows() != d || f.cols() != d) {
        return Err(Error::DimMismatch {
            expected: format!("one square filter per party for dims {:?}", rho.dims()),
            found: format!("{} filters", filters.len()),
        });
    }
    Ok(DensityMatrix::from_trusted(rho.dims().to_vec(), kron_all(filters).sandwich(rho.mat())))
}

/// Whitens the reduced state of one party.
///
/// Returns the filtered state and the filter `det(rho_p)^{1/(2d)} rho_p^{-1/2}`
/// (unit determinant).
pub fn filter_once(rho: &DensityMatrix, party: usize) -> Result<(DensityMatrix, ComplexMatrix)> {
    rho.check_party(party)?;
    let d = rho.dims()[party];
    let reduced = partial_trace_matrix(rho.mat(), rho.dims(), &[party])?;
    let eig = herm_eig(&reduced)?;
    let floor = NumericPolicy::DEFAULT.singular_floor * eig.max().abs();
    if eig.min() <= floor {
        return Err(Error::SingularReduction { party, min_eigenvalue: eig.min() });
    }
    let det: f64 = eig.values.iter().product();
    let prefactor = det.powf(1.0 / (2.0 * d as f64));
    let filter = eig.map(|e| prefactor / e.sqrt());
    let out = apply_local_filter(rho, party, &filter)?;
    Ok((out, filter))
}

/// Normal form with default tolerance and sweep budget.
pub fn normal_form(rho: &DensityMatrix, tol: f64, max_sweeps: usize) -> Result<NormalFormResult> {
    normal_form_with(rho, NormalFormOptions { tol, max_sweeps, ..NormalFormOptions::default() })
}

/// Cyclic whitening sweeps until every reduced state is within `tol`
/// (Frobenius) of `I/d_i`.
///
/// Fails with [`Error::NotFullRank`] when the smallest eigenvalue of `rho` is
/// not above `rank_floor` times the largest, and with
/// [`Error::NoConvergence`] (carrying the last iterate) when the sweep budget
/// runs out.
pub fn normal_form_with(rho: &DensityMatrix, opts: NormalFormOptions) -> Result<NormalFormResult> {
    let eig = rho.eigenvalues();
    let (min, max) = (eig[0], eig[eig.len() - 1]);
    let floor = opts.rank_floor * max;
    if min <= floor {
        return Err(Error::NotFullRank { min_eigenvalue: min, floor });
    }

    let mut filters: Vec<ComplexMatrix> = rho.dims().iter().map(|&d| ComplexMatrix::identity(d)).collect();
    let mut state = rho.clone();
    let mut objective_trace = vec![objective_at_filters(rho, &filters)?];
    let mut residual = normal_form_residual(&state);
    let mut iterations = 0;

    while residual >= opts.tol && iterations < opts.max_sweeps {
        for party in 0..rho.num_parties() {
            let (next, f) = filter_once(&state, party)?;
            filters[party] = f.matmul(&filters[party]);
            state = next;
        }
        iterations += 1;
        objective_trace.push(objective_at_filters(rho, &filters)?);
        residual = normal_form_residual(&state);
    }

    let result = NormalFormResult { nf: state, filters, iterations, converged: residual < opts.tol, objective_trace, residual };
    if result.converged {
        Ok(result)
    } else {
        Err(Error::NoConvergence { best: Box::new(result) })
    }
}

/// Singular values of the correlation matrix of a bipartite normal form,
/// descending. These are the weights `xi_i` of the diagonal form
/// `(1/MN)(I + sum xi_i G_i^A (x) G_i^B)`.
pub fn xi_values(nf: &DensityMatrix) -> Result<Vec<f64>> {
    if nf.num_parties() != 2 {
        return Err(Error::BadSubset(format!("xi values need a bipartite state, got {} parties", nf.num_parties())));
    }
    let (m, n) = (nf.dims()[0], nf.dims()[1]);
    let (ba, bb) = (gellmann(m, 2.0)?, gellmann(n, 2.0)?);
    let bloch_norm = local_bloch(nf, 0, &ba)?.norm().max(local_bloch(nf, 1, &bb)?.norm());
    if bloch_norm > NumericPolicy::DEFAULT.normal_form_bloch_tol {
        return Err(Error::NotNormalForm { bloch_norm });
    }
    let t = correlation_matrix(nf, &gellmann(m, 1.0)?, &gellmann(n, 1.0)?)?;
    Ok(singular_values(&t.t.to_complex()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, partial_trace, C64};
    use crate::states;

    fn half_identity() -> ComplexMatrix {
        ComplexMatrix::identity(2).scale_real(0.5)
    }

    #[test]
    fn objective_at_maximally_mixed() {
        for dims in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
            let rho = DensityMatrix::maximally_mixed(dims.clone()).unwrap();
            let taus: Vec<_> = dims.iter().map(|&d| ComplexMatrix::identity(d).scale_real(1.0 / d as f64)).collect();
            // Tr[I/D * I/D] = 1/D, prod det(I/d)^{1/d} = prod 1/d = 1/D
            assert!((objective_f(&rho, &taus).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn objective_is_scale_invariant_per_factor() {
        let rho = states::random_full_rank(&[2, 3], 1).unwrap();
        let t1 = states::random_full_rank(&[2], 2).unwrap().into_matrix();
        let t2 = states::random_full_rank(&[3], 3).unwrap().into_matrix();
        let base = objective_f(&rho, &[t1.clone(), t2.clone()]).unwrap();
        let scaled = objective_f(&rho, &[t1.scale_real(7.5), t2]).unwrap();
        assert!((scaled / base - 1.0).abs() < 1e-13);
    }

    #[test]
    fn objective_rejects_singular_tau() {
        let rho = states::random_full_rank(&[2, 2], 1).unwrap();
        let sing = ComplexMatrix::from_diag(&[1.0, 0.0]);
        assert!(matches!(objective_f(&rho, &[sing, ComplexMatrix::identity(2)]), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn filtering_a_mixed_party_is_trivial() {
        let rho = states::isotropic(2, 0.4).unwrap();
        let (out, f) = filter_once(&rho, 0).unwrap();
        assert!(out.mat().max_abs_diff(rho.mat()) < 1e-15);
        assert!(f.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn filtering_whitens_the_reduced_state() {
        // rho_A = diag(3/4, 1/4)
        let a = DensityMatrix::new(vec![2], ComplexMatrix::from_diag(&[0.75, 0.25])).unwrap();
        let b = states::random_full_rank(&[2], 4).unwrap();
        let mixed = states::mix_noise(&states::bell(), 0.3).unwrap();
        let prod = states::product(&[a, b.clone()]).unwrap();
        let rho = DensityMatrix::new(vec![2, 2], &prod.mat().scale_real(0.5) + &mixed.mat().scale_real(0.5)).unwrap();
        let (out, _) = filter_once(&rho, 0).unwrap();
        assert!(partial_trace(&out, &[0]).unwrap().mat().max_abs_diff(&half_identity()) < 1e-12);

        // product input: the other factor is untouched
        let (out, _) = filter_once(&prod, 0).unwrap();
        let want = kron(&half_identity(), b.mat());
        assert!(out.mat().max_abs_diff(&want) < 1e-14);
    }

    #[test]
    fn filter_has_unit_determinant() {
        let rho = states::random_full_rank(&[3, 2], 8).unwrap();
        let (_, f) = filter_once(&rho, 0).unwrap();
        let det = crate::linalg::herm_det(&f).unwrap();
        assert!((det - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_reduction_names_the_party() {
        let zero = DensityMatrix::pure(vec![2], &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]).unwrap();
        let rho = states::product(&[DensityMatrix::maximally_mixed(vec![2]).unwrap(), zero]).unwrap();
        assert!(matches!(filter_once(&rho, 1), Err(Error::SingularReduction { party: 1, .. })));
    }

    #[test]
    fn product_states_reach_the_identity() {
        let rho = states::random_product(&[2, 2, 2], 11).unwrap();
        let r = normal_form(&rho, 1e-9, 500).unwrap();
        let want = ComplexMatrix::identity(8).scale_real(0.125);
        assert!(r.nf.mat().max_abs_diff(&want) < 1e-8);
    }

    #[test]
    fn isotropic_is_already_normal() {
        let rho = states::isotropic(3, 0.3).unwrap();
        let r = normal_form(&rho, 1e-9, 500).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.filters.iter().all(|f| f == &ComplexMatrix::identity(3)));
    }

    #[test]
    fn rank_deficient_input_is_refused() {
        assert!(matches!(normal_form(&states::bell(), 1e-9, 500), Err(Error::NotFullRank { .. })));
    }

    #[test]
    fn budget_exhaustion_reports_the_last_iterate() {
        let rho = states::random_full_rank(&[2, 3], 5).unwrap();
        match normal_form(&rho, 1e-15, 2) {
            Err(Error::NoConvergence { best }) => {
                assert_eq!(best.iterations, 2);
                assert!(!best.converged);
                assert_eq!(best.objective_trace.len(), 3);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn stored_filters_reproduce_the_normal_form() {
        let rho = states::random_full_rank(&[2, 2, 2], 21).unwrap();
        let r = normal_form(&rho, 1e-9, 500).unwrap();
        let again = apply_filters(&rho, &r.filters).unwrap();
        assert!(again.mat().max_abs_diff(r.nf.mat()) < 1e-10);
        assert!(r.objective_trace.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn acin_normal_form_converges() {
        let rho = states::mix_noise(&states::acin_edge(2.0, 3.0, 0.6).unwrap(), 0.95).unwrap();
        let r = normal_form(&rho, 1e-9, 500).unwrap();
        assert!(r.converged && r.residual < 1e-9);
        let b = gellmann(2, 2.0).unwrap();
        for p in 0..3 {
            assert!(local_bloch(&r.nf, p, &b).unwrap().norm() < 1e-8);
        }
    }

    #[test]
    fn xi_values_of_isotropic_and_mixed_states() {
        let mm = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(xi_values(&mm).unwrap().iter().all(|&x| x.abs() < 1e-15));
        let p = 0.45;
        let xi = xi_values(&states::isotropic(2, p).unwrap()).unwrap();
        assert!(xi.iter().all(|x| (x - 2.0 * p).abs() < 1e-14));
        let not_nf = states::random_full_rank(&[2, 2], 3).unwrap();
        assert!(matches!(xi_values(&not_nf), Err(Error::NotNormalForm { .. })));
    }
}
