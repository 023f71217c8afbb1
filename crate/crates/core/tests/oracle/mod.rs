//! Brute-force reference computations that share no code with the library:
//! hard-coded Pauli matrices, naive Kronecker products and traces, and a
//! closed-form eigensolver for real symmetric 3x3 matrices.

#![allow(dead_code)]

use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// `I, X, Y, Z`.
pub fn paulis() -> [Mat; 4] {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    [
        vec![vec![l, o], vec![o, l]],
        vec![vec![o, l], vec![l, o]],
        vec![vec![o, c(0.0, -1.0)], vec![c(0.0, 1.0), o]],
        vec![vec![l, o], vec![o, -l]],
    ]
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `Tr(a b)` without forming the product.
pub fn trace_product(a: &Mat, b: &Mat) -> C {
    let mut s = c(0.0, 0.0);
    for i in 0..a.len() {
        for k in 0..b.len() {
            s += a[i][k] * b[k][i];
        }
    }
    s
}

/// `|psi><psi|` for an unnormalised real amplitude vector.
pub fn projector(amps: &[f64]) -> Mat {
    let norm: f64 = amps.iter().map(|x| x * x).sum();
    amps.iter().map(|&x| amps.iter().map(|&y| c(x * y / norm, 0.0)).collect()).collect()
}

pub fn bell() -> Mat {
    projector(&[1.0, 0.0, 0.0, 1.0])
}

pub fn ghz3() -> Mat {
    let mut amps = [0.0; 8];
    amps[0] = 1.0;
    amps[7] = 1.0;
    projector(&amps)
}

/// `p |Phi+><Phi+| + (1-p) I/4`.
pub fn isotropic2(p: f64) -> Mat {
    let mut m = bell();
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x *= p;
            if i == j {
                *x += c((1.0 - p) / 4.0, 0.0);
            }
        }
    }
    m
}

/// Two-qubit correlation matrix for orthonormal generators `sigma/sqrt(2)`:
/// `T_ij = 4 Tr(rho s_i s_j / 2) = 2 Tr(rho s_i s_j)`.
pub fn two_qubit_t(rho: &Mat) -> [[f64; 3]; 3] {
    let s = paulis();
    let mut t = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            t[i][j] = 2.0 * trace_product(rho, &kron(&s[i + 1], &s[j + 1])).re;
        }
    }
    t
}

/// Three-qubit tensor for Pauli generators (Tr = 2):
/// `(8/8) Tr(rho s_i s_j s_k)`.
pub fn three_qubit_tensor(rho: &Mat) -> [[[f64; 3]; 3]; 3] {
    let s = paulis();
    let mut t = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let op = kron(&kron(&s[i + 1], &s[j + 1]), &s[k + 1]);
                t[i][j][k] = trace_product(rho, &op).re;
            }
        }
    }
    t
}

/// Eigenvalues of a real symmetric 3x3 matrix, ascending (trigonometric
/// solution of the characteristic cubic).
pub fn sym3_eigenvalues(a: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    if p1 == 0.0 {
        let mut e = [a[0][0], a[1][1], a[2][2]];
        e.sort_by(|x, y| x.partial_cmp(y).unwrap());
        return e;
    }
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det_b = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det_b / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut e = [e1, e2, e3];
    e.sort_by(|x, y| x.partial_cmp(y).unwrap());
    e
}

/// Trace norm of a real matrix with three rows, via the eigenvalues of
/// `A A^T`.
pub fn trace_norm_3_rows(rows: &[Vec<f64>; 3]) -> f64 {
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = rows[i].iter().zip(&rows[j]).map(|(x, y)| x * y).sum();
        }
    }
    sym3_eigenvalues(g).iter().map(|&e| e.max(0.0).sqrt()).sum()
}

pub fn singular_values_3_rows(rows: &[Vec<f64>; 3]) -> [f64; 3] {
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = rows[i].iter().zip(&rows[j]).map(|(x, y)| x * y).sum();
        }
    }
    let e = sym3_eigenvalues(g);
    [e[2].max(0.0).sqrt(), e[1].max(0.0).sqrt(), e[0].max(0.0).sqrt()]
}

pub fn matrix_rows(t: &[[f64; 3]; 3]) -> [Vec<f64>; 3] {
    [t[0].to_vec(), t[1].to_vec(), t[2].to_vec()]
}

/// Mode unfolding of a 3x3x3 tensor: rows by `mode`, columns by the other
/// two modes in ascending order, last fastest.
pub fn unfold3(t: &[[[f64; 3]; 3]; 3], mode: usize) -> [Vec<f64>; 3] {
    let mut rows: [Vec<f64>; 3] = [vec![], vec![], vec![]];
    for (r, row) in rows.iter_mut().enumerate() {
        for a in 0..3 {
            for b in 0..3 {
                let v = match mode {
                    0 => t[r][a][b],
                    1 => t[a][r][b],
                    _ => t[a][b][r],
                };
                row.push(v);
            }
        }
    }
    rows
}

pub fn tensor_kf_norm3(t: &[[[f64; 3]; 3]; 3]) -> f64 {
    (0..3).map(|m| trace_norm_3_rows(&unfold3(t, m))).fold(0.0, f64::max)
}

/// Isotropic two-qubit CM threshold by bisection on the oracle norm.
pub fn isotropic_cm_threshold(tol: f64) -> f64 {
    let detected = |p: f64| trace_norm_3_rows(&matrix_rows(&two_qubit_t(&isotropic2(p)))) > 2.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if detected(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sanity check of the cubic solver on a matrix with known spectrum
/// `{1, 3, 5}`.
pub fn self_check() -> bool {
    let e = sym3_eigenvalues([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 5.0]]);
    (e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12 && (e[2] - 5.0).abs() < 1e-12
}
