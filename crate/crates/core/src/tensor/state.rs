use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Bipartition, SystemShape};
use crate::error::{Error, Result};

/// Normalization tolerance for [`PureState`].
pub const NORM_TOL: f64 = 1e-12;

/// Dense, unit-norm pure state over a [`SystemShape`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    shape: SystemShape,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized to within [`NORM_TOL`].
    pub fn new(shape: SystemShape, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(&shape, &amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { shape, amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(shape: SystemShape, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(&shape, &amplitudes)?;
        let norm = l2_norm(&amplitudes);
        if !(norm.is_finite() && norm > 1e-300) {
            return Err(Error::NotNormalized { norm });
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { shape, amplitudes })
    }

    /// Computational basis state `|i_0 i_1 ... i_{N-1}>`.
    pub fn basis(shape: SystemShape, levels: &[usize]) -> Result<Self> {
        if levels.len() != shape.n_sites() || levels.iter().zip(shape.dims()).any(|(&l, &d)| l >= d) {
            return Err(Error::param(format!("basis levels {levels:?} invalid for shape {shape}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); shape.total_dim()];
        amps[shape.flat_index(levels)] = Complex64::new(1.0, 0.0);
        Ok(Self { shape, amplitudes: amps })
    }

    /// Tensor product of single-site vectors (each normalized on the way in).
    pub fn product(factors: &[Vec<Complex64>]) -> Result<Self> {
        let shape = SystemShape::new(factors.iter().map(Vec::len).collect())?;
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for f in factors {
            let n = l2_norm(f);
            if n < 1e-300 {
                return Err(Error::NotNormalized { norm: n });
            }
            amps = kron(&amps, f);
            amps.iter_mut().for_each(|a| *a /= n);
        }
        Ok(Self { shape, amplitudes: amps })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, levels: &[usize]) -> Complex64 {
        self.amplitudes[self.shape.flat_index(levels)]
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        same_shape(&self.shape, &other.shape)?;
        Ok(inner_raw(&self.amplitudes, &other.amplitudes))
    }

    /// Same state with its sites reordered: new site `j` is old site `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> PureState {
        let amplitudes = permute_amplitudes(&self.shape, &self.amplitudes, order);
        PureState { shape: self.shape.permuted(order), amplitudes }
    }

    /// Coefficient matrix across `cut`: rows indexed by the left sites, columns by the right.
    pub fn coefficient_matrix(&self, cut: &Bipartition) -> Result<DMatrix<Complex64>> {
        cut.check_shape(&self.shape)?;
        Ok(coefficient_matrix(&self.shape, &self.amplitudes, cut))
    }
}

fn check_len(shape: &SystemShape, amps: &[Complex64]) -> Result<()> {
    if amps.len() != shape.total_dim() {
        return Err(Error::LengthMismatch { expected: shape.total_dim(), found: amps.len() });
    }
    Ok(())
}

pub(crate) fn same_shape(a: &SystemShape, b: &SystemShape) -> Result<()> {
    if a != b {
        return Err(Error::ShapeMismatch { left: a.dims().to_vec(), right: b.dims().to_vec() });
    }
    Ok(())
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn inner_raw(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn kron(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}

/// Reorders the sites of a flat amplitude vector: new site `j` is old site `order[j]`.
pub(crate) fn permute_amplitudes(shape: &SystemShape, amps: &[Complex64], order: &[usize]) -> Vec<Complex64> {
    debug_assert_eq!(order.len(), shape.n_sites());
    if order.iter().enumerate().all(|(j, &s)| j == s) {
        return amps.to_vec();
    }
    let new_shape = shape.permuted(order);
    let new_strides = new_shape.strides();
    // Stride of old site s inside the new layout.
    let mut stride_of_old = vec![0; order.len()];
    for (j, &s) in order.iter().enumerate() {
        stride_of_old[s] = new_strides[j];
    }
    let dims = shape.dims();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut idx = vec![0usize; dims.len()];
    let mut target = 0usize;
    for a in amps {
        out[target] = *a;
        // Odometer increment over the old multi-index, tracking the new flat index.
        for s in (0..dims.len()).rev() {
            idx[s] += 1;
            target += stride_of_old[s];
            if idx[s] < dims[s] {
                break;
            }
            target -= stride_of_old[s] * dims[s];
            idx[s] = 0;
        }
    }
    out
}

pub(crate) fn coefficient_matrix(shape: &SystemShape, amps: &[Complex64], cut: &Bipartition) -> DMatrix<Complex64> {
    let order = cut.site_order();
    let permuted = permute_amplitudes(shape, amps, &order);
    let rows = shape.sub_dim(cut.left());
    let cols = shape.sub_dim(cut.right());
    DMatrix::from_row_slice(rows, cols, &permuted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn inner_product_examples() {
        let shape = SystemShape::uniform(2, 2).unwrap();
        let s00 = PureState::basis(shape.clone(), &[0, 0]).unwrap();
        let s11 = PureState::basis(shape, &[1, 1]).unwrap();
        assert_eq!(s00.inner(&s00).unwrap(), c(1.0));
        assert_eq!(s00.inner(&s11).unwrap(), c(0.0));

        let ghz = states::ghz(3, 2).unwrap();
        let s000 = PureState::basis(ghz.shape().clone(), &[0, 0, 0]).unwrap();
        assert!((ghz.inner(&s000).unwrap() - c(std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!(ghz.inner(&s00).is_err());
    }

    #[test]
    fn normalization_is_enforced() {
        let shape = SystemShape::uniform(1, 2).unwrap();
        assert!(PureState::new(shape.clone(), vec![c(1.0), c(1.0)]).is_err());
        let s = PureState::normalized(shape.clone(), vec![c(1.0), c(1.0)]).unwrap();
        assert!((l2_norm(s.amplitudes()) - 1.0).abs() < 1e-15);
        assert!(PureState::normalized(shape, vec![c(0.0), c(0.0)]).is_err());
    }

    #[test]
    fn permutation_moves_sites() {
        let shape = SystemShape::new(vec![2, 3, 4]).unwrap();
        let s = PureState::basis(shape, &[1, 2, 3]).unwrap();
        let p = s.permuted(&[2, 0, 1]);
        assert_eq!(p.shape().dims(), &[4, 2, 3]);
        assert_eq!(p.amplitude(&[3, 1, 2]), c(1.0));
    }
}
