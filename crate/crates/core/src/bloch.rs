//! Bloch representation: local Bloch vectors, correlation matrices and
//! tensors over party subsets, their unfoldings, and reconstruction.
//!
//! For generators normalised as `Tr(l_k l_m) = c delta_km`, the coefficient
//! of `l_a1 (x) .. (x) l_aM` on parties `S` is
//!
//! ```text
//! prod_{mu in S} (d_mu / c_mu) * Tr[rho l_a1^{mu_1} .. l_aM^{mu_M}]
//! ```
//!
//! so that `rho = (1/prod d)(I + sum of all coefficient-weighted terms)`
//! for any choice of `c`. With `c = 2` this is the multipartite convention
//! of the generalised correlation-matrix criterion; with `c = 1` on two
//! parties it is the bipartite correlation matrix `T_ij = MN Tr(rho l_i l_j)`.

use crate::basis::GeneratorBasis;
use crate::error::{Error, Result};
use crate::linalg::{
    check_subset, embed_operator, kron_all, partial_trace_matrix, real_expectation, trace_norm, ComplexMatrix,
    DensityMatrix, RealMatrix,
};

/// Single-party coefficients `v_a = (d/c) Tr(rho l_a^{party})`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    pub party: usize,
    pub v: Vec<f64>,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Bipartite correlation matrix of size `(M^2-1) x (N^2-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub m_dim: usize,
    pub n_dim: usize,
    pub t: RealMatrix,
}

/// Real order-M correlation tensor over an ordered party subset, stored
/// row-major (last index fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    subset: Vec<usize>,
    shape: Vec<usize>,
    entries: Vec<f64>,
}

impl CorrelationTensor {
    pub fn new(subset: Vec<usize>, shape: Vec<usize>, entries: Vec<f64>) -> Result<Self> {
        if subset.len() != shape.len() {
            return Err(Error::InvalidShape(format!("{} parties but {} modes", subset.len(), shape.len())));
        }
        let count: usize = shape.iter().product();
        if entries.len() != count {
            return Err(Error::InvalidShape(format!("{} entries for shape {shape:?}", entries.len())));
        }
        Ok(Self { subset, shape, entries })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// Mode sizes `d_mu^2 - 1`.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.shape.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, index: &[usize]) -> f64 {
        self.entries[flat_index(index, &self.shape)]
    }
}

fn flat_index(index: &[usize], shape: &[usize]) -> usize {
    index.iter().zip(shape).fold(0, |acc, (&i, &n)| acc * n + i)
}

/// Iterates every multi-index of `shape` in row-major order.
fn multi_indices(shape: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = shape.iter().product();
    (0..total).map(move |mut flat| {
        let mut idx = vec![0; shape.len()];
        for (slot, &n) in idx.iter_mut().zip(shape).rev() {
            *slot = flat % n;
            flat /= n;
        }
        idx
    })
}

fn check_bases(rho: &DensityMatrix, subset: &[usize], bases: &[&GeneratorBasis]) -> Result<()> {
    if bases.len() != subset.len() {
        return Err(Error::DimMismatch {
            expected: format!("{} bases", subset.len()),
            found: format!("{} bases", bases.len()),
        });
    }
    for (&p, b) in subset.iter().zip(bases) {
        if b.dim() != rho.dims()[p] {
            return Err(Error::DimMismatch {
                expected: format!("basis of dimension {} for party {p}", rho.dims()[p]),
                found: format!("dimension {}", b.dim()),
            });
        }
    }
    Ok(())
}

/// Coefficients over any non-empty subset, including single parties.
fn coefficients(rho: &DensityMatrix, subset: &[usize], bases: &[&GeneratorBasis]) -> Result<CorrelationTensor> {
    check_subset(subset, rho.num_parties())?;
    check_bases(rho, subset, bases)?;
    let reduced = partial_trace_matrix(rho.mat(), rho.dims(), subset)?;
    let prefactor: f64 = bases.iter().map(|b| b.dim() as f64 / b.norm_constant()).product();
    let shape: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut entries = Vec::with_capacity(shape.iter().product());
    for idx in multi_indices(&shape) {
        let op = kron_all(idx.iter().zip(bases).map(|(&a, b)| &b.generators()[a]));
        entries.push(prefactor * real_expectation(reduced.trace_product(&op))?);
    }
    CorrelationTensor::new(subset.to_vec(), shape, entries)
}

/// Local Bloch vector of one party.
pub fn local_bloch(rho: &DensityMatrix, party: usize, basis: &GeneratorBasis) -> Result<BlochVector> {
    rho.check_party(party)?;
    let t = coefficients(rho, &[party], &[basis])?;
    Ok(BlochVector { party, v: t.entries })
}

/// Bipartite correlation matrix. With orthonormal (`c = 1`) bases this is
/// `T_ij = MN Tr(rho l_i^A (x) l_j^B)`.
pub fn correlation_matrix(rho: &DensityMatrix, basis_a: &GeneratorBasis, basis_b: &GeneratorBasis) -> Result<CorrelationMatrix> {
    if rho.num_parties() != 2 {
        return Err(Error::DimMismatch { expected: "2 parties".into(), found: format!("{} parties", rho.num_parties()) });
    }
    let t = coefficients(rho, &[0, 1], &[basis_a, basis_b])?;
    let (r, c) = (t.shape[0], t.shape[1]);
    Ok(CorrelationMatrix { m_dim: rho.dims()[0], n_dim: rho.dims()[1], t: RealMatrix::from_vec(r, c, t.entries)? })
}

/// Correlation tensor over a subset of at least two parties; `bases` holds
/// one basis per subset member, in subset order.
pub fn correlation_tensor(rho: &DensityMatrix, subset: &[usize], bases: &[&GeneratorBasis]) -> Result<CorrelationTensor> {
    if subset.len() < 2 {
        return Err(Error::BadSubset(format!("correlation tensors need at least 2 parties, got {subset:?}")));
    }
    coefficients(rho, subset, bases)
}

/// Mode-`mode` unfolding (0-based): rows indexed by that mode, columns by the
/// remaining modes in ascending order with the last one fastest.
pub fn unfold(t: &CorrelationTensor, mode: usize) -> Result<RealMatrix> {
    if mode >= t.order() {
        return Err(Error::BadSubset(format!("mode {mode} out of range for an order-{} tensor", t.order())));
    }
    let rows = t.shape[mode];
    let cols = t.entries.len() / rows;
    let mut out = RealMatrix::zeros(rows, cols);
    let rest: Vec<usize> = t.shape.iter().enumerate().filter(|&(m, _)| m != mode).map(|(_, &n)| n).collect();
    for (flat, idx) in multi_indices(&t.shape).enumerate() {
        let rest_idx: Vec<usize> = idx.iter().enumerate().filter(|&(m, _)| m != mode).map(|(_, &i)| i).collect();
        out[(idx[mode], flat_index(&rest_idx, &rest))] = t.entries[flat];
    }
    Ok(out)
}

/// Max over modes of the trace norm of the mode unfolding.
pub fn tensor_kf_norm(t: &CorrelationTensor) -> f64 {
    (0..t.order())
        .map(|m| trace_norm(&unfold(t, m).expect("mode in range").to_complex()))
        .fold(0.0, f64::max)
}

/// All subsets of `0..n` with at least `min_size` members, by size and then
/// lexicographically.
pub fn party_subsets(n: usize, min_size: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&p| mask & (1 << p) != 0).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| s.len() >= min_size)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Complete Bloch data of a state: one vector per party and one tensor per
/// subset of size at least two.
#[derive(Debug, Clone)]
pub struct BlochExpansion {
    pub blochs: Vec<BlochVector>,
    pub tensors: Vec<CorrelationTensor>,
}

/// Decomposes `rho` over one basis per party.
pub fn decompose(rho: &DensityMatrix, bases: &[GeneratorBasis]) -> Result<BlochExpansion> {
    if bases.len() != rho.num_parties() {
        return Err(Error::DimMismatch { expected: format!("{} bases", rho.num_parties()), found: format!("{} bases", bases.len()) });
    }
    let blochs = (0..rho.num_parties()).map(|p| local_bloch(rho, p, &bases[p])).collect::<Result<_>>()?;
    let tensors = party_subsets(rho.num_parties(), 2)
        .into_iter()
        .map(|s| {
            let b: Vec<&GeneratorBasis> = s.iter().map(|&p| &bases[p]).collect();
            correlation_tensor(rho, &s, &b)
        })
        .collect::<Result<_>>()?;
    Ok(BlochExpansion { blochs, tensors })
}

/// Rebuilds the state from a complete family of Bloch coefficients.
pub fn reconstruct(dims: &[usize], bases: &[GeneratorBasis], blochs: &[BlochVector], tensors: &[CorrelationTensor]) -> Result<DensityMatrix> {
    let n = dims.len();
    if bases.len() != n || bases.iter().zip(dims).any(|(b, &d)| b.dim() != d) {
        return Err(Error::DimMismatch { expected: format!("one basis per party for dims {dims:?}"), found: format!("{} bases", bases.len()) });
    }
    let total: usize = dims.iter().product();
    let mut acc = ComplexMatrix::identity(total);
    for party in 0..n {
        let b = blochs
            .iter()
            .find(|b| b.party == party)
            .ok_or_else(|| Error::IncompleteCoefficients(format!("missing Bloch vector for party {party}")))?;
        if b.v.len() != bases[party].len() {
            return Err(Error::IncompleteCoefficients(format!("Bloch vector of party {party} has {} entries", b.v.len())));
        }
        let mut local = ComplexMatrix::zeros(dims[party], dims[party]);
        for (&x, g) in b.v.iter().zip(bases[party].generators()) {
            local = &local + &g.scale_real(x);
        }
        acc = &acc + &embed_operator(&local, &[party], dims)?;
    }
    for subset in party_subsets(n, 2) {
        let t = tensors
            .iter()
            .find(|t| t.subset == subset)
            .ok_or_else(|| Error::IncompleteCoefficients(format!("missing correlation tensor for {subset:?}")))?;
        let shape: Vec<usize> = subset.iter().map(|&p| bases[p].len()).collect();
        if t.shape != shape {
            return Err(Error::IncompleteCoefficients(format!("tensor for {subset:?} has shape {:?}", t.shape)));
        }
        let sub_dim: usize = subset.iter().map(|&p| dims[p]).product();
        let mut term = ComplexMatrix::zeros(sub_dim, sub_dim);
        for (flat, idx) in multi_indices(&shape).enumerate() {
            let x = t.entries[flat];
            if x == 0.0 {
                continue;
            }
            let op = kron_all(idx.iter().zip(&subset).map(|(&a, &p)| &bases[p].generators()[a]));
            term = &term + &op.scale_real(x);
        }
        acc = &acc + &embed_operator(&term, &subset, dims)?;
    }
    DensityMatrix::new(dims.to_vec(), acc.scale_real(1.0 / total as f64))
}
