//! Haar-random states and subspaces for property suites.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::measures::seesaw::{random_unit_vector, restart_rng};
use crate::tensor::{PureState, Subspace, SystemShape};

pub use crate::measures::seesaw::restart_rng as seeded_rng;

/// Haar-random pure state (normalized complex Gaussian vector).
pub fn haar_state(shape: &SystemShape, rng: &mut ChaCha8Rng) -> PureState {
    let v = random_unit_vector(shape.total_dim(), rng);
    PureState::normalized(shape.clone(), v).expect("Gaussian vector is nonzero")
}

/// Span of `k` Haar-random orthonormal vectors.
pub fn haar_subspace(shape: &SystemShape, k: usize, rng: &mut ChaCha8Rng) -> Result<Subspace> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    while basis.len() < k {
        let mut v = random_unit_vector(shape.total_dim(), rng);
        for _pass in 0..2 {
            for b in &basis {
                let c: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            basis.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    Subspace::new(
        basis
            .into_iter()
            .map(|v| PureState::normalized(shape.clone(), v))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Random normalized coefficient vector of length `k`.
pub fn random_coefficients(k: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    random_unit_vector(k, rng)
}

/// Generator for case `index` of a suite seeded with `seed`.
pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    restart_rng(seed, index)
}
