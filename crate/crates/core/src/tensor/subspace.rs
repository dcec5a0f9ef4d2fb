use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::{inner_raw, l2_norm, same_shape};
use super::{PureState, SystemShape};
use crate::error::{Error, Result};

/// Max |<phi_i|phi_j> - delta_ij| accepted as orthonormal.
pub const ORTHO_TOL: f64 = 1e-10;
/// Inputs within this deviation are re-orthonormalized instead of rejected.
pub const REPAIR_TOL: f64 = 1e-6;

/// Span of an ordered orthonormal list of states on one shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Subspace {
    shape: SystemShape,
    basis: Vec<PureState>,
}

/// Unnormalized projection `sum_i <phi_i|psi> |phi_i>` and its norm.
#[derive(Debug, Clone)]
pub struct Projection {
    pub vector: Vec<Complex64>,
    pub coefficients: Vec<Complex64>,
    pub norm: f64,
}

impl Subspace {
    pub fn new(basis: Vec<PureState>) -> Result<Self> {
        let shape = basis
            .first()
            .ok_or_else(|| Error::param("a subspace needs at least one basis vector"))?
            .shape()
            .clone();
        for b in &basis {
            same_shape(&shape, b.shape())?;
        }
        let deviation = gram_deviation(&basis);
        if deviation <= ORTHO_TOL {
            return Ok(Self { shape, basis });
        }
        if deviation > REPAIR_TOL {
            return Err(Error::NotOrthonormal { deviation });
        }
        let repaired = orthonormalize(basis.into_iter().map(PureState::into_amplitudes).collect());
        let basis = repaired
            .into_iter()
            .map(|v| PureState::normalized(shape.clone(), v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { shape, basis })
    }

    pub fn shape(&self) -> &SystemShape {
        &self.shape
    }

    pub fn basis(&self) -> &[PureState] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> DMatrix<Complex64> {
        let k = self.basis.len();
        DMatrix::from_fn(k, k, |i, j| inner_raw(self.basis[i].amplitudes(), self.basis[j].amplitudes()))
    }

    /// Subspace spanned by the first `k` basis vectors.
    pub fn truncated(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.dim() {
            return Err(Error::param(format!("cannot keep {k} of {} basis vectors", self.dim())));
        }
        Ok(Self { shape: self.shape.clone(), basis: self.basis[..k].to_vec() })
    }

    /// Normalized state `sum_i c_i |phi_i>`.
    pub fn combine(&self, coefficients: &[Complex64]) -> Result<PureState> {
        if coefficients.len() != self.dim() {
            return Err(Error::LengthMismatch { expected: self.dim(), found: coefficients.len() });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.shape.total_dim()];
        for (c, b) in coefficients.iter().zip(&self.basis) {
            for (a, x) in amps.iter_mut().zip(b.amplitudes()) {
                *a += c * x;
            }
        }
        PureState::normalized(self.shape.clone(), amps)
    }

    pub fn project(&self, psi: &PureState) -> Result<Projection> {
        same_shape(&self.shape, psi.shape())?;
        let coefficients: Vec<Complex64> =
            self.basis.iter().map(|b| inner_raw(b.amplitudes(), psi.amplitudes())).collect();
        let mut vector = vec![Complex64::new(0.0, 0.0); self.shape.total_dim()];
        for (c, b) in coefficients.iter().zip(&self.basis) {
            for (a, x) in vector.iter_mut().zip(b.amplitudes()) {
                *a += c * x;
            }
        }
        let norm = l2_norm(&vector).min(1.0);
        Ok(Projection { vector, coefficients, norm })
    }
}

pub fn project_onto(subspace: &Subspace, psi: &PureState) -> Result<Projection> {
    subspace.project(psi)
}

fn gram_deviation(basis: &[PureState]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = inner_raw(a.amplitudes(), b.amplitudes());
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g - Complex64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
pub(crate) fn orthonormalize(mut vectors: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    for i in 0..vectors.len() {
        for _pass in 0..2 {
            for j in 0..i {
                let (done, rest) = vectors.split_at_mut(i);
                let c = inner_raw(&done[j], &rest[0]);
                for (x, y) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= c * y;
                }
            }
        }
        let n = l2_norm(&vectors[i]);
        vectors[i].iter_mut().for_each(|x| *x /= n);
    }
    vectors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    #[test]
    fn projection_norms() {
        let v = Subspace::new(vec![states::bell_basis_vector(3, 0).unwrap(), states::bell_basis_vector(3, 1).unwrap()])
            .unwrap();
        let s00 = PureState::basis(v.shape().clone(), &[0, 0]).unwrap();
        let p = project_onto(&v, &s00).unwrap();
        assert!((p.norm * p.norm - 2.0 / 3.0).abs() < 1e-12);

        let inside = v.basis()[1].clone();
        assert!((project_onto(&v, &inside).unwrap().norm - 1.0).abs() < 1e-12);
        let s01 = PureState::basis(v.shape().clone(), &[0, 1]).unwrap();
        assert!(project_onto(&v, &s01).unwrap().norm < 1e-15);
    }

    #[test]
    fn near_orthonormal_input_is_repaired() {
        let shape = SystemShape::uniform(1, 3).unwrap();
        let a = PureState::basis(shape.clone(), &[0]).unwrap();
        let eps = 1e-8;
        let b = PureState::normalized(shape.clone(), vec![
            Complex64::new(eps, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ])
        .unwrap();
        let v = Subspace::new(vec![a.clone(), b]).unwrap();
        let g = v.gram();
        assert!((g - DMatrix::identity(2, 2)).norm() < 1e-12);

        let far = PureState::normalized(shape, vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        assert!(matches!(Subspace::new(vec![a, far]), Err(Error::NotOrthonormal { .. })));
    }
}
