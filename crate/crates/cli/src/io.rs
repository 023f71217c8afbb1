//! On-disk state format.
//!
//! ```json
//! { "dims": [2, 2], "re": [..16 numbers..], "im": [..16 numbers..] }
//! ```
//!
//! Entries are row-major with party 0 as the most significant index. Floats
//! are written in shortest round-trip form, so a write/read cycle is exact.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sepscan_core::{ComplexMatrix, DensityMatrix, Error, C64};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// A dense complex matrix in split real/imaginary form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), re: m.real_parts(), im: m.imag_parts() }
    }
}

impl StateFile {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self { dims: rho.dims().to_vec(), re: rho.mat().real_parts(), im: rho.mat().imag_parts() }
    }

    /// Validates against the density-matrix invariants.
    pub fn to_density(&self) -> Result<DensityMatrix, Error> {
        let n: usize = self.dims.iter().product();
        if self.re.len() != n * n || self.im.len() != n * n {
            return Err(Error::InvalidShape(format!(
                "dims {:?} need {} entries, got re {} / im {}",
                self.dims,
                n * n,
                self.re.len(),
                self.im.len()
            )));
        }
        let data = self.re.iter().zip(&self.im).map(|(&r, &i)| C64::new(r, i)).collect();
        DensityMatrix::new(self.dims.clone(), ComplexMatrix::from_vec(n, n, data)?)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        write_json(path, self)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}
