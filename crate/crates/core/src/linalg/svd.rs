//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Columns are orthogonalised directly, so small singular values keep full
//! absolute accuracy instead of the square-root loss of an `m^dagger m`
//! eigensolve.

use super::eigen::Rotation;
use super::matrix::{ComplexMatrix, C64};

const MAX_SWEEPS: usize = 100;

/// `m = u * diag(sigma) * v^dagger` with `u`, `v` square unitaries and
/// `sigma` non-negative, descending, of length `min(rows, cols)`.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (r, c) = (self.u.rows(), self.v.rows());
        let mut s = ComplexMatrix::zeros(r, c);
        for (k, &x) in self.sigma.iter().enumerate() {
            s[(k, k)] = C64::new(x, 0.0);
        }
        self.u.matmul(&s).matmul(&self.v.adjoint())
    }
}

/// Orthogonalises the columns of `w` in place, accumulating the rotations
/// into `v`. Requires `w.rows() >= w.cols()`.
fn orthogonalize_columns(w: &mut ComplexMatrix, v: &mut ComplexMatrix) {
    let n = w.cols();
    let m = w.rows();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut g = C64::new(0.0, 0.0);
                for k in 0..m {
                    let a = w[(k, p)];
                    let b = w[(k, q)];
                    alpha += a.norm_sqr();
                    beta += b.norm_sqr();
                    g += a.conj() * b;
                }
                if g.norm() <= f64::EPSILON * (alpha * beta).sqrt() || g.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let rot = Rotation::new(alpha, beta, g);
                rot.apply_right(w, p, q);
                rot.apply_right(v, p, q);
            }
        }
        if !rotated {
            break;
        }
    }
}

/// Extends `cols` orthonormal columns of an `n x n` matrix to a full unitary
/// basis by Gram-Schmidt over the standard basis vectors.
fn complete_basis(mut basis: Vec<Vec<C64>>, n: usize) -> Vec<Vec<C64>> {
    let mut candidate = 0;
    while basis.len() < n && candidate < n {
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[candidate] = C64::new(1.0, 0.0);
        candidate += 1;
        // two passes of classical Gram-Schmidt
        for _ in 0..2 {
            for b in &basis {
                let proj: C64 = b.iter().zip(&x).map(|(bi, xi)| bi.conj() * xi).sum();
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= proj * bi;
                }
            }
        }
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(x.into_iter().map(|z| z / norm).collect());
        }
    }
    basis
}

fn columns_to_matrix(cols: &[Vec<C64>], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

fn svd_tall(m: &ComplexMatrix) -> Svd {
    let (rows, n) = (m.rows(), m.cols());
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(n);
    orthogonalize_columns(&mut w, &mut v);

    let norms: Vec<f64> = (0..n).map(|j| w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);

    let cutoff = sigma.first().copied().unwrap_or(0.0) * f64::EPSILON * (rows.max(n) as f64);
    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(rows);
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] <= cutoff || sigma[k] == 0.0 {
            break;
        }
        ucols.push(w.column(j).into_iter().map(|z| z / sigma[k]).collect());
    }
    let ucols = complete_basis(ucols, rows);
    Svd { u: columns_to_matrix(&ucols, rows), sigma, v }
}

/// Full singular value decomposition of any complex matrix.
pub fn svd(m: &ComplexMatrix) -> Svd {
    if m.rows() >= m.cols() {
        svd_tall(m)
    } else {
        let t = svd_tall(&m.adjoint());
        Svd { u: t.v, sigma: t.sigma, v: t.u }
    }
}

/// Singular values only, descending.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut w = if m.rows() >= m.cols() { m.clone() } else { m.adjoint() };
    let n = w.cols();
    let mut v = ComplexMatrix::identity(n);
    orthogonalize_columns(&mut w, &mut v);
    let mut s: Vec<f64> = (0..n).map(|j| w.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Trace (Ky Fan / nuclear) norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> f64 {
    singular_values(m).iter().sum()
}
