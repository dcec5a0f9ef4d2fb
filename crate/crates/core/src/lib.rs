//! Geometric entanglement measures for multipartite pure states and a
//! sufficient criterion certifying that a subspace is completely or
//! genuinely entangled.
//!
//! Given an orthonormal basis `phi_1, ..., phi_k` of a subspace `V` and any
//! geometric measure `E(psi) = 1 - max_{phi in S} |<phi|psi>|^2`, the least
//! entangled vector of `V` satisfies `E_min(V) >= sum_i E(phi_i) - (k - 1)`.
//! A positive right-hand side certifies that `V` contains no vector from `S`.

pub mod combinatorics;
pub mod criterion;
pub mod error;
pub mod experiments;
pub mod io;
pub(crate) mod linalg;
pub mod measures;
pub mod oracle;
pub mod random;
pub mod states;
pub mod tensor;
pub mod validation;

pub use error::{Error, Result};
pub use measures::{MeasureSpec, OptimizerConfig};
pub use tensor::{Bipartition, PureState, SchmidtSpectrum, Subspace, SystemShape};

pub use num_complex::Complex64;

#[doc = include_str!("../../../README.md")]
#[cfg(doctest)]
pub struct ReadmeDoctests;
