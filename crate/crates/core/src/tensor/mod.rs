//! Dense multipartite pure states, cuts, and Schmidt decompositions.

mod bipartition;
mod schmidt;
mod shape;
pub(crate) mod state;
mod subspace;

pub use bipartition::{enumerate_bipartitions, Bipartition};
pub use schmidt::{
    schmidt_decompose, schmidt_spectrum, squared_schmidt_spectrum, SchmidtDecomposition, SchmidtSpectrum,
    SCHMIDT_CUTOFF,
};
pub use shape::{SystemShape, MAX_TOTAL_DIM};
pub use state::{PureState, NORM_TOL};
pub use subspace::{project_onto, Projection, Subspace, ORTHO_TOL, REPAIR_TOL};

use num_complex::Complex64;

use crate::error::Result;

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.inner(b)
}
