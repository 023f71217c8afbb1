//! Deterministic benchmark states.
//!
//! Random families draw from `ChaCha8Rng::seed_from_u64(seed)` (crate
//! `rand_chacha`). Complex Gaussian entries are sampled real part first, then
//! imaginary part, each from `StandardNormal`, in row-major order. Random
//! outputs are mixed with the maximally mixed state at weight
//! [`REGULARIZATION`] so they are strictly positive.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_dims, kron, ComplexMatrix, DensityMatrix, C64};

/// Weight of the identity admixture in random states.
pub const REGULARIZATION: f64 = 1e-3;

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{name} must be positive and finite, got {x}")))
    }
}

/// Three-qubit PPT entangled edge state with parameters `a, b, c > 0`,
/// normalised by its trace `2 + a + b + c + 1/a + 1/b + 1/c`.
///
/// Basis order `|000>, |001>, .., |111>`: diagonal `(1, a, b, c, 1/c, 1/b,
/// 1/a, 1)` plus the coherence between `|000>` and `|111>`.
pub fn acin_edge(a: f64, b: f64, c: f64) -> Result<DensityMatrix> {
    positive("a", a)?;
    positive("b", b)?;
    positive("c", c)?;
    let diag = [1.0, a, b, c, 1.0 / c, 1.0 / b, 1.0 / a, 1.0];
    let mut m = ComplexMatrix::from_diag(&diag);
    m[(0, 7)] = C64::new(1.0, 0.0);
    m[(7, 0)] = C64::new(1.0, 0.0);
    let trace: f64 = diag.iter().sum();
    DensityMatrix::new(vec![2, 2, 2], m.scale_real(1.0 / trace))
}

/// `p rho + (1 - p) I / D`.
pub fn mix_noise(rho: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter(format!("noise weight must lie in [0, 1], got {p}")));
    }
    let d = rho.dim();
    let noise = ComplexMatrix::identity(d).scale_real((1.0 - p) / d as f64);
    DensityMatrix::new(rho.dims().to_vec(), &rho.mat().scale_real(p) + &noise)
}

/// `sum_{i < min(m, n)} |ii> / sqrt(min(m, n))` on `m (x) n`.
pub fn max_entangled(m: usize, n: usize) -> Result<DensityMatrix> {
    check_dims(&[m, n])?;
    let mut psi = vec![C64::new(0.0, 0.0); m * n];
    for i in 0..m.min(n) {
        psi[i * n + i] = C64::new(1.0, 0.0);
    }
    DensityMatrix::pure(vec![m, n], &psi)
}

/// `|Phi+> = (|00> + |11>)/sqrt(2)`.
pub fn bell() -> DensityMatrix {
    max_entangled(2, 2).expect("valid dimensions")
}

/// `(|0..0> + |1..1>)/sqrt(2)` on `n` qubits.
pub fn ghz(n: usize) -> Result<DensityMatrix> {
    if n < 2 {
        return Err(Error::BadParameter(format!("GHZ state needs at least 2 qubits, got {n}")));
    }
    let total = 1 << n;
    let mut psi = vec![C64::new(0.0, 0.0); total];
    psi[0] = C64::new(1.0, 0.0);
    psi[total - 1] = C64::new(1.0, 0.0);
    DensityMatrix::pure(vec![2; n], &psi)
}

/// `p |Phi_d><Phi_d| + (1 - p) I / d^2`.
pub fn isotropic(d: usize, p: f64) -> Result<DensityMatrix> {
    mix_noise(&max_entangled(d, d)?, p)
}

/// Tensor product of states; dimension lists are concatenated.
pub fn product(factors: &[DensityMatrix]) -> Result<DensityMatrix> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::BadParameter("empty product".into()))?;
    let mut dims = first.dims().to_vec();
    let mut mat = first.mat().clone();
    for f in rest {
        dims.extend_from_slice(f.dims());
        mat = kron(&mat, f.mat());
    }
    DensityMatrix::new(dims, mat)
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

fn ginibre_state(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let w = g.matmul(&g.adjoint());
    let tr = w.trace().re;
    w.scale_real(1.0 / tr)
}

fn regularize(dims: Vec<usize>, sigma: ComplexMatrix) -> Result<DensityMatrix> {
    let d = sigma.rows();
    let noise = ComplexMatrix::identity(d).scale_real(REGULARIZATION / d as f64);
    DensityMatrix::from_unnormalized(dims, &sigma.scale_real(1.0 - REGULARIZATION) + &noise)
}

/// `(1 - eps) G G^dagger / Tr + eps I / D` with `G` complex Ginibre.
pub fn random_full_rank(dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    let total = check_dims(dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    regularize(dims.to_vec(), ginibre_state(total, &mut rng))
}

/// Uniform mixture of `terms` random pure product states, regularised.
pub fn random_separable(dims: &[usize], terms: usize, seed: u64) -> Result<DensityMatrix> {
    let total = check_dims(dims)?;
    if terms == 0 {
        return Err(Error::BadParameter("a separable mixture needs at least one term".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = ComplexMatrix::zeros(total, total);
    for _ in 0..terms {
        let mut psi = vec![C64::new(1.0, 0.0)];
        for &d in dims {
            let local: Vec<C64> = (0..d).map(|_| gaussian(&mut rng)).collect();
            let norm = local.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            psi = psi.iter().flat_map(|a| local.iter().map(move |b| a * b / norm)).collect();
        }
        acc = &acc + &ComplexMatrix::from_fn(total, total, |i, j| psi[i] * psi[j].conj());
    }
    regularize(dims.to_vec(), acc.scale_real(1.0 / terms as f64))
}

/// Product of independent regularised random local states (full rank).
pub fn random_product(dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    check_dims(dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factors = dims
        .iter()
        .map(|&d| regularize(vec![d], ginibre_state(d, &mut rng)))
        .collect::<Result<Vec<_>>>()?;
    product(&factors)
}

/// One-parameter state families addressable from the command line.
/// `at(p)` mixes the family's base state with white noise at weight `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum StateFamily {
    Acin { a: f64, b: f64, c: f64 },
    Isotropic { d: usize },
    Bell,
    Ghz { n: usize },
    MaxEntangled { m: usize, n: usize },
    MaximallyMixed { dims: Vec<usize> },
    RandomFullRank { dims: Vec<usize>, seed: u64 },
    RandomSeparable { dims: Vec<usize>, terms: usize, seed: u64 },
}

impl StateFamily {
    /// The noiseless member (`p = 1`).
    pub fn base(&self) -> Result<DensityMatrix> {
        match self {
            StateFamily::Acin { a, b, c } => acin_edge(*a, *b, *c),
            StateFamily::Isotropic { d } => max_entangled(*d, *d),
            StateFamily::Bell => Ok(bell()),
            StateFamily::Ghz { n } => ghz(*n),
            StateFamily::MaxEntangled { m, n } => max_entangled(*m, *n),
            StateFamily::MaximallyMixed { dims } => DensityMatrix::maximally_mixed(dims.clone()),
            StateFamily::RandomFullRank { dims, seed } => random_full_rank(dims, *seed),
            StateFamily::RandomSeparable { dims, terms, seed } => random_separable(dims, *terms, *seed),
        }
    }

    pub fn at(&self, p: f64) -> Result<DensityMatrix> {
        mix_noise(&self.base()?, p)
    }
}
