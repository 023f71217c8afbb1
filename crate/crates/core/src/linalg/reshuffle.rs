//! Index reshuffles on tensor-product operators: partial trace, partial
//! transpose, realignment and subsystem embedding.
//!
//! Every routine uses the same convention: a flat index is the row-major
//! number of its digits `(i_0, .., i_{N-1})`, party 0 most significant.

use super::density::{check_dims, DensityMatrix};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Digits of a flat index, party 0 first.
pub fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// Flat index from digits, party 0 most significant.
pub fn compose(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// Checks that `subset` is non-empty, strictly increasing and in range.
pub fn check_subset(subset: &[usize], parties: usize) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::BadSubset("empty party subset".into()));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadSubset(format!("{subset:?} is not strictly increasing")));
    }
    if let Some(&p) = subset.iter().find(|&&p| p >= parties) {
        return Err(Error::BadSubset(format!("party {p} out of range for {parties} parties")));
    }
    Ok(())
}

/// (kept index, traced index) for every flat index.
fn split_indices(dims: &[usize], keep: &[usize]) -> Vec<(usize, usize)> {
    let total: usize = dims.iter().product();
    let kept_dims: Vec<usize> = keep.iter().map(|&p| dims[p]).collect();
    let rest: Vec<usize> = (0..dims.len()).filter(|p| !keep.contains(p)).collect();
    let rest_dims: Vec<usize> = rest.iter().map(|&p| dims[p]).collect();
    (0..total)
        .map(|i| {
            let d = digits(i, dims);
            let k: Vec<usize> = keep.iter().map(|&p| d[p]).collect();
            let r: Vec<usize> = rest.iter().map(|&p| d[p]).collect();
            (compose(&k, &kept_dims), compose(&r, &rest_dims))
        })
        .collect()
}

/// Partial trace of an operator over every party not in `keep`.
pub fn partial_trace_matrix(mat: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total = check_dims(dims)?;
    if mat.rows() != total || mat.cols() != total {
        return Err(Error::DimMismatch { expected: format!("{total}x{total}"), found: format!("{}x{}", mat.rows(), mat.cols()) });
    }
    check_subset(keep, dims.len())?;
    let kept: usize = keep.iter().map(|&p| dims[p]).product();
    let split = split_indices(dims, keep);
    let mut out = ComplexMatrix::zeros(kept, kept);
    for (i, &(ki, ti)) in split.iter().enumerate() {
        for (j, &(kj, tj)) in split.iter().enumerate() {
            if ti == tj {
                out[(ki, kj)] += mat[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Reduced state on the parties in `keep` (strictly increasing, 0-based).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let out = partial_trace_matrix(rho.mat(), rho.dims(), keep)?;
    let dims = keep.iter().map(|&p| rho.dims()[p]).collect();
    Ok(DensityMatrix::from_trusted(dims, out))
}

/// Transposes the indices of one tensor factor.
pub fn partial_transpose_matrix(mat: &ComplexMatrix, dims: &[usize], party: usize) -> Result<ComplexMatrix> {
    let total = check_dims(dims)?;
    if mat.rows() != total || mat.cols() != total {
        return Err(Error::DimMismatch { expected: format!("{total}x{total}"), found: format!("{}x{}", mat.rows(), mat.cols()) });
    }
    if party >= dims.len() {
        return Err(Error::BadSubset(format!("party {party} out of range for {} parties", dims.len())));
    }
    // stride of the party's digit in the flat index
    let stride: usize = dims[party + 1..].iter().product();
    let d = dims[party];
    let mut out = ComplexMatrix::zeros(total, total);
    for i in 0..total {
        let di = (i / stride) % d;
        for j in 0..total {
            let dj = (j / stride) % d;
            let i2 = i - di * stride + dj * stride;
            let j2 = j - dj * stride + di * stride;
            out[(i2, j2)] = mat[(i, j)];
        }
    }
    Ok(out)
}

pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<ComplexMatrix> {
    partial_transpose_matrix(rho.mat(), rho.dims(), party)
}

/// Realignment `R_{(i j),(k l)} = m_{(i k),(j l)}` of an `(MN)x(MN)`
/// operator into an `M^2 x N^2` matrix.
pub fn realign_matrix(mat: &ComplexMatrix, m: usize, n: usize) -> Result<ComplexMatrix> {
    if mat.rows() != m * n || mat.cols() != m * n {
        return Err(Error::DimMismatch { expected: format!("{0}x{0}", m * n), found: format!("{}x{}", mat.rows(), mat.cols()) });
    }
    Ok(ComplexMatrix::from_fn(m * m, n * n, |r, c| {
        let (i, j) = (r / m, r % m);
        let (k, l) = (c / n, c % n);
        mat[(i * n + k, j * n + l)]
    }))
}

pub fn realign(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.num_parties() != 2 {
        return Err(Error::BadSubset(format!("realignment needs 2 parties, got {}", rho.num_parties())));
    }
    realign_matrix(rho.mat(), rho.dims()[0], rho.dims()[1])
}

/// Embeds an operator acting on the parties of `subset` into the full space,
/// acting as the identity on the complement.
pub fn embed_operator(op: &ComplexMatrix, subset: &[usize], full_dims: &[usize]) -> Result<ComplexMatrix> {
    let total = check_dims(full_dims)?;
    check_subset(subset, full_dims.len())?;
    let sub: usize = subset.iter().map(|&p| full_dims[p]).product();
    if op.rows() != sub || op.cols() != sub {
        return Err(Error::DimMismatch { expected: format!("{sub}x{sub}"), found: format!("{}x{}", op.rows(), op.cols()) });
    }
    if subset.len() == full_dims.len() {
        return Ok(op.clone());
    }
    let split = split_indices(full_dims, subset);
    Ok(ComplexMatrix::from_fn(total, total, |i, j| {
        let (si, ri) = split[i];
        let (sj, rj) = split[j];
        if ri == rj {
            op[(si, sj)]
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}
