use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of amplitudes a dense state may hold.
pub const MAX_TOTAL_DIM: usize = 1 << 24;

/// Local dimensions of a multipartite system, one entry per site.
///
/// Basis states are addressed by a multi-index `(i_0, ..., i_{N-1})` flattened
/// in row-major order, site 0 varying slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SystemShape {
    dims: Vec<usize>,
}

impl SystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidShape("at least one site is required".into()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidShape(format!("local dimension {d} < 2")));
        }
        let total = dims.iter().try_fold(1u128, |acc, &d| acc.checked_mul(d as u128));
        match total {
            Some(t) if t <= MAX_TOTAL_DIM as u128 => Ok(Self { dims }),
            Some(t) => Err(Error::DimensionCap { total: t, cap: MAX_TOTAL_DIM }),
            None => Err(Error::DimensionCap { total: u128::MAX, cap: MAX_TOTAL_DIM }),
        }
    }

    /// `n` sites of equal local dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Product of the local dimensions of `sites`.
    pub fn sub_dim(&self, sites: &[usize]) -> usize {
        sites.iter().map(|&s| self.dims[s]).product()
    }

    /// Row-major strides; the last site has stride 1.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for s in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        strides
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dims.len()];
        for s in (0..self.dims.len()).rev() {
            idx[s] = flat % self.dims[s];
            flat /= self.dims[s];
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.dims)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    /// Shape obtained by reordering the sites: new site `j` is old site `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self { dims: order.iter().map(|&s| self.dims[s]).collect() }
    }
}

impl TryFrom<Vec<usize>> for SystemShape {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<SystemShape> for Vec<usize> {
    fn from(shape: SystemShape) -> Self {
        shape.dims
    }
}

impl std::fmt::Display for SystemShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}
