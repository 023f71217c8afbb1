//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, plus the
//! matrix functions built on it.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::policy::NumericPolicy;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching unitary eigenvector
/// matrix (eigenvector `k` is column `k`).
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermEig {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// V diag(f(e)) V^dagger
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fe: Vec<f64> = self.values.iter().map(|&e| f(e)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| (0..n).map(|k| v[(i, k)] * v[(j, k)].conj() * fe[k]).sum())
    }
}

/// 2x2 unitary block `[[c, s], [-s conj(e), c conj(e)]]` that zeroes the
/// off-diagonal of the Hermitian block `[[alpha, g], [conj(g), beta]]`.
#[derive(Clone, Copy)]
pub(crate) struct Rotation {
    pp: C64,
    pq: C64,
    qp: C64,
    qq: C64,
}

impl Rotation {
    pub(crate) fn new(alpha: f64, beta: f64, g: C64) -> Self {
        let abs_g = g.norm();
        let e = g / abs_g;
        let theta = (beta - alpha) / (2.0 * abs_g);
        let t = if theta >= 0.0 {
            1.0 / (theta + (theta * theta + 1.0).sqrt())
        } else {
            -1.0 / (-theta + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        let ec = e.conj();
        Self { pp: C64::new(c, 0.0), pq: C64::new(s, 0.0), qp: -ec * s, qq: ec * c }
    }

    /// m <- m J on columns p, q.
    pub(crate) fn apply_right(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.rows() {
            let a = m[(k, p)];
            let b = m[(k, q)];
            m[(k, p)] = a * self.pp + b * self.qp;
            m[(k, q)] = a * self.pq + b * self.qq;
        }
    }

    /// m <- J^dagger m on rows p, q.
    fn apply_left_adjoint(&self, m: &mut ComplexMatrix, p: usize, q: usize) {
        for k in 0..m.cols() {
            let a = m[(p, k)];
            let b = m[(q, k)];
            m[(p, k)] = self.pp.conj() * a + self.qp.conj() * b;
            m[(q, k)] = self.pq.conj() * a + self.qq.conj() * b;
        }
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Input is rejected when `max |m - m^dagger|` exceeds the eigensolver
/// tolerance (scaled by the matrix magnitude when that exceeds one).
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermEig> {
    if !m.is_square() {
        return Err(Error::InvalidShape(format!("eigensolver needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let residual = m.hermitian_residual();
    if residual > NumericPolicy::DEFAULT.eig_input_tol * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    if scale > 0.0 {
        let target = f64::EPSILON * scale;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let g = a[(p, q)];
                    if g.norm() <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let rot = Rotation::new(a[(p, p)].re, a[(q, q)].re, g);
                    rot.apply_right(&mut a, p, q);
                    rot.apply_left_adjoint(&mut a, p, q);
                    a[(p, q)] = C64::new(0.0, 0.0);
                    a[(q, p)] = C64::new(0.0, 0.0);
                    a[(p, p)].im = 0.0;
                    a[(q, q)].im = 0.0;
                    rot.apply_right(&mut v, p, q);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermEig { values, vectors })
}

/// Ascending eigenvalues only.
pub fn eigvalsh(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(herm_eig(m)?.values)
}

/// Real power `m^p` of a positive-definite Hermitian matrix.
///
/// Fails with [`Error::SingularMatrix`] when the smallest eigenvalue is not
/// above `singular_floor` times the largest.
pub fn herm_power(m: &ComplexMatrix, p: f64) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    let floor = NumericPolicy::DEFAULT.singular_floor * eig.max().abs();
    if eig.min() <= floor {
        return Err(Error::SingularMatrix { min_eigenvalue: eig.min(), floor });
    }
    Ok(eig.map(|e| e.powf(p)))
}

/// Determinant of a Hermitian matrix as the product of its eigenvalues.
pub fn herm_det(m: &ComplexMatrix) -> Result<f64> {
    Ok(eigvalsh(m)?.iter().product())
}
