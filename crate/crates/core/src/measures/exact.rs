//! Measures that reduce exactly to Schmidt spectra.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{enumerate_bipartitions, squared_schmidt_spectrum, Bipartition, PureState};

/// `E_r = 1 - (lambda_1^2 + ... + lambda_{r-1}^2)` across `cut`.
///
/// Zero exactly when the Schmidt rank is at most `r - 1` (up to rounding,
/// which is clamped away).
pub fn e_r(psi: &PureState, cut: &Bipartition, r: usize) -> Result<f64> {
    if r < 2 {
        return Err(Error::param(format!("E_r needs r >= 2, got {r}")));
    }
    let sq = squared_schmidt_spectrum(psi, cut)?;
    Ok(complement_of_weight(sq.iter().take(r - 1).sum()))
}

fn complement_of_weight(weight: f64) -> f64 {
    let v = 1.0 - weight;
    if v.abs() < 1e-14 {
        0.0
    } else {
        v.clamp(0.0, 1.0)
    }
}

/// Minimum of a per-cut value together with the cut attaining it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CutMinimum {
    pub value: f64,
    pub cut: Bipartition,
}

/// Minimum over canonical cuts of `E_r` across the cut (`r = 2` gives the GGM).
pub fn min_over_cuts_e_r(psi: &PureState, r: usize) -> Result<CutMinimum> {
    if r < 2 {
        return Err(Error::param(format!("r must be >= 2, got {r}")));
    }
    let cuts = enumerate_bipartitions(psi.shape())?;
    let mut best: Option<CutMinimum> = None;
    for cut in cuts {
        let value = e_r(psi, &cut, r)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CutMinimum { value, cut });
        }
    }
    Ok(best.expect("N >= 2 has at least one cut"))
}

/// Generalized geometric measure: `min_cut (1 - lambda_1^2)`.
pub fn ggm(psi: &PureState) -> Result<f64> {
    Ok(ggm_with_cut(psi)?.value)
}

pub fn ggm_with_cut(psi: &PureState) -> Result<CutMinimum> {
    min_over_cuts_e_r(psi, 2)
}

/// Genuine entanglement of `r`-bounded Schmidt rank.
///
/// Maximizes the overlap with states whose Schmidt rank is at most `r - 1`
/// across at least one cut, which reduces to `min_cut E_r`.
pub fn gme_bounded_rank(psi: &PureState, r: usize) -> Result<f64> {
    Ok(min_over_cuts_e_r(psi, r)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use crate::tensor::SystemShape;
    use num_complex::Complex64;

    #[test]
    fn e_r_examples() {
        let cut = Bipartition::bipartite();
        for d in 2..7 {
            let phi = states::maximally_entangled(d).unwrap();
            for r in 2..=d {
                let expected = 1.0 - (r - 1) as f64 / d as f64;
                assert!((e_r(&phi, &cut, r).unwrap() - expected).abs() < 1e-12);
            }
            // Rank d state has E_r = 0 once r - 1 >= d.
            assert_eq!(e_r(&phi, &cut, d + 1).unwrap(), 0.0);
        }
        let prod = PureState::basis(SystemShape::uniform(2, 3).unwrap(), &[1, 2]).unwrap();
        assert_eq!(e_r(&prod, &cut, 2).unwrap(), 0.0);
        let w = states::dicke_qubit(3, 1).unwrap();
        let v = e_r(&w, &Bipartition::new(&[0], 3).unwrap(), 2).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        assert!(e_r(&w, &cut, 1).is_err());
    }

    #[test]
    fn ggm_examples() {
        assert!((ggm(&states::ghz(3, 2).unwrap()).unwrap() - 0.5).abs() < 1e-12);
        assert!((ggm(&states::dicke_qubit(3, 1).unwrap()).unwrap() - 1.0 / 3.0).abs() < 1e-12);
        assert!((ggm(&states::ghz(3, 3).unwrap()).unwrap() - 2.0 / 3.0).abs() < 1e-12);

        // |0> (x) Phi+ is product across {0}|{1,2}.
        let z = Complex64::new(0.0, 0.0);
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let amps = vec![s, z, z, s, z, z, z, z];
        let biprod = PureState::new(SystemShape::uniform(3, 2).unwrap(), amps).unwrap();
        let m = ggm_with_cut(&biprod).unwrap();
        assert_eq!(m.value, 0.0);
        assert_eq!(m.cut.left(), &[0]);
    }

    #[test]
    fn nested_measures_are_monotone_in_r() {
        let psi = states::dicke_qudit(&states::CompositionVector::new(vec![2, 1, 1]).unwrap()).unwrap();
        let mut prev = 1.0;
        for r in 2..6 {
            let v = gme_bounded_rank(&psi, r).unwrap();
            assert!(v <= prev + 1e-15);
            prev = v;
        }
    }
}
