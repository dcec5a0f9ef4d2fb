use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{coefficient_matrix, permute_amplitudes};
use super::{Bipartition, PureState};
use crate::error::Result;
use crate::linalg;

/// Schmidt coefficients below this value count as zero.
pub const SCHMIDT_CUTOFF: f64 = 1e-10;

/// Strictly positive Schmidt coefficients in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    coefficients: Vec<f64>,
}

impl SchmidtSpectrum {
    pub(crate) fn from_singular_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        values.retain(|&v| v >= SCHMIDT_CUTOFF);
        Self { coefficients: values }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn squared(&self) -> Vec<f64> {
        self.coefficients.iter().map(|l| l * l).collect()
    }

    /// Sum of the `m` largest squared coefficients.
    pub fn leading_weight(&self, m: usize) -> f64 {
        self.coefficients.iter().take(m).map(|l| l * l).sum()
    }
}

/// `psi = sum_i lambda_i |e_i>|f_i>` across a cut; columns of `left`/`right` are `e_i`/`f_i`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub cut: Bipartition,
    pub spectrum: SchmidtSpectrum,
    pub left: DMatrix<Complex64>,
    pub right: DMatrix<Complex64>,
    source: PureState,
}

impl SchmidtDecomposition {
    /// Rebuilds the state from the retained terms, in the original site order.
    pub fn reconstruct(&self) -> PureState {
        let r = self.spectrum.rank();
        let mut m = DMatrix::<Complex64>::zeros(self.left.nrows(), self.right.nrows());
        for (i, &l) in self.spectrum.coefficients().iter().enumerate().take(r) {
            m += self.left.column(i) * self.right.column(i).transpose() * Complex64::new(l, 0.0);
        }
        let order = self.cut.site_order();
        let permuted_shape = self.source.shape().permuted(&order);
        let mut inverse = vec![0; order.len()];
        for (j, &s) in order.iter().enumerate() {
            inverse[s] = j;
        }
        let row_major: Vec<Complex64> = m.transpose().iter().copied().collect();
        let amps = permute_amplitudes(&permuted_shape, &row_major, &inverse);
        PureState::normalized(self.source.shape().clone(), amps)
            .unwrap_or_else(|_| self.source.clone())
    }
}

pub fn schmidt_decompose(psi: &PureState, cut: &Bipartition) -> Result<SchmidtDecomposition> {
    let m = psi.coefficient_matrix(cut)?;
    let (u, sigma, v) = linalg::sorted_svd(&m);
    let spectrum = SchmidtSpectrum::from_singular_values(sigma);
    let r = spectrum.rank();
    Ok(SchmidtDecomposition {
        cut: cut.clone(),
        left: u.columns(0, r).into_owned(),
        right: v.columns(0, r).map(|z| z.conj()),
        spectrum,
        source: psi.clone(),
    })
}

/// Schmidt coefficients via a direct SVD of the coefficient matrix.
pub fn schmidt_spectrum(psi: &PureState, cut: &Bipartition) -> Result<SchmidtSpectrum> {
    let m = psi.coefficient_matrix(cut)?;
    let (_, sigma, _) = linalg::sorted_svd(&m);
    Ok(SchmidtSpectrum::from_singular_values(sigma))
}

/// All `min(d_left, d_right)` squared Schmidt coefficients (zeros kept), descending.
///
/// Uses the reduced density matrix on the smaller side, so it is cheap for
/// unbalanced cuts. Accurate in the squared values; tiny coefficients lose
/// relative precision, so rank decisions go through [`schmidt_spectrum`].
pub fn squared_schmidt_spectrum(psi: &PureState, cut: &Bipartition) -> Result<Vec<f64>> {
    cut.check_shape(psi.shape())?;
    let m = coefficient_matrix(psi.shape(), psi.amplitudes(), cut);
    Ok(linalg::squared_singular_values(&m))
}
