//! Generalised Gell-Mann bases of su(d) and local orthogonal observables.
//!
//! Generator order is fixed: symmetric pairs `(j, k)`, `j < k`, in
//! lexicographic order; antisymmetric pairs in the same order; then the
//! diagonal generators `l = 1..d-1`. For `d = 2` this is `(x, y, z)`.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, RealMatrix, C64};

const BASIS_TOL: f64 = 1e-12;

/// `d^2 - 1` traceless Hermitian generators with `Tr(l_k l_m) = c delta_km`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorBasis {
    dim: usize,
    norm_constant: f64,
    generators: Vec<ComplexMatrix>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Generalised Gell-Mann matrices of dimension `d` normalised so that
/// `Tr(l_k l_m) = c delta_km`.
pub fn gellmann(d: usize, c: f64) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::BadParameter(format!("normalisation constant must be positive, got {c}")));
    }
    let scale = (c / 2.0).sqrt();
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = C64::new(scale, 0.0);
            m[(k, j)] = C64::new(scale, 0.0);
            generators.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = C64::new(0.0, -scale);
            m[(k, j)] = C64::new(0.0, scale);
            generators.push(m);
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let norm = scale * (2.0 / (lf * (lf + 1.0))).sqrt();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = C64::new(norm, 0.0);
        }
        m[(l, l)] = C64::new(-lf * norm, 0.0);
        generators.push(m);
    }
    Ok(GeneratorBasis { dim: d, norm_constant: c, generators })
}

/// Max |Tr(a_k b_l) - target_kl| over a list of Hermitian matrices.
fn gram_residual(ops: &[ComplexMatrix], target: impl Fn(usize, usize) -> f64) -> f64 {
    let mut worst: f64 = 0.0;
    for (k, a) in ops.iter().enumerate() {
        for (l, b) in ops.iter().enumerate().skip(k) {
            worst = worst.max((a.trace_product(b) - C64::new(target(k, l), 0.0)).norm());
        }
    }
    worst
}

/// Local orthogonal observables `G_0..G_{d^2-1}` with `G_0 = I/sqrt(d)`,
/// optionally padded with explicit zero observables up to a common length.
#[derive(Debug, Clone, PartialEq)]
pub struct LooSet {
    dim: usize,
    observables: Vec<ComplexMatrix>,
}

impl LooSet {
    /// Validates a user-supplied set: `d^2` Hermitian observables, `G_0 =
    /// I/sqrt(d)`, unit Gram matrix; any further entries must be zero.
    pub fn new(dim: usize, observables: Vec<ComplexMatrix>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        let full = dim * dim;
        if observables.len() < full {
            return Err(Error::BadLoo(format!("{} observables given, {} required", observables.len(), full)));
        }
        if observables.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(Error::BadLoo(format!("every observable must be {dim}x{dim}")));
        }
        let g0 = ComplexMatrix::identity(dim).scale_real(1.0 / (dim as f64).sqrt());
        if observables[0].max_abs_diff(&g0) > BASIS_TOL {
            return Err(Error::BadLoo("G_0 must equal I/sqrt(d)".into()));
        }
        if let Some(r) = observables.iter().map(|g| g.hermitian_residual()).find(|&r| r > BASIS_TOL) {
            return Err(Error::BadLoo(format!("observable not Hermitian (residual {r:e})")));
        }
        let residual = gram_residual(&observables[..full], |k, l| if k == l { 1.0 } else { 0.0 });
        if residual > 1e-10 {
            return Err(Error::BadLoo(format!("Gram matrix differs from identity by {residual:e}")));
        }
        if observables[full..].iter().any(|g| g.max_abs() != 0.0) {
            return Err(Error::BadLoo("padding observables must be zero".into()));
        }
        Ok(Self { dim, observables })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    /// Number of observables including padding.
    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    /// Appends zero observables until the set holds `len` entries.
    pub fn padded(&self, len: usize) -> Result<Self> {
        if len < self.observables.len() {
            return Err(Error::BadLoo(format!("cannot pad {} observables down to {len}", self.observables.len())));
        }
        let mut observables = self.observables.clone();
        observables.resize(len, ComplexMatrix::zeros(self.dim, self.dim));
        Ok(Self { dim: self.dim, observables })
    }

    /// Complex conjugate of every observable (still a valid LOO set).
    pub fn conjugate(&self) -> Self {
        Self { dim: self.dim, observables: self.observables.iter().map(|g| g.conj()).collect() }
    }
}

/// Canonical LOOs: `I/sqrt(d)` followed by the orthonormal Gell-Mann matrices.
pub fn loo_set(d: usize) -> Result<LooSet> {
    let basis = gellmann(d, 1.0)?;
    let mut observables = Vec::with_capacity(d * d);
    observables.push(ComplexMatrix::identity(d).scale_real(1.0 / (d as f64).sqrt()));
    observables.extend(basis.generators);
    Ok(LooSet { dim: d, observables })
}

/// `G'_k = sum_l r_kl G_l` for `k, l >= 1`; `G_0` and padding unchanged.
pub fn rotate_loos(set: &LooSet, r: &RealMatrix) -> Result<LooSet> {
    let n = set.dim * set.dim - 1;
    if r.rows() != n || r.cols() != n {
        return Err(Error::DimMismatch { expected: format!("{n}x{n} rotation"), found: format!("{}x{}", r.rows(), r.cols()) });
    }
    let residual = r.orthogonality_residual();
    if residual > 1e-10 {
        return Err(Error::NotOrthogonal { residual });
    }
    let mut observables = set.observables.clone();
    for k in 0..n {
        let mut g = ComplexMatrix::zeros(set.dim, set.dim);
        for l in 0..n {
            let w = r[(k, l)];
            if w != 0.0 {
                g = &g + &set.observables[l + 1].scale_real(w);
            }
        }
        observables[k + 1] = g;
    }
    Ok(LooSet { dim: set.dim, observables })
}
