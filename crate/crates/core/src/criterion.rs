//! Lower bounds on minimal subspace entanglement and the verdicts built on them.
//!
//! For orthonormal `phi_1..phi_k` spanning `V` and any geometric measure `E`:
//!
//! * superposition bound: `E(sum a_i phi_i) >= sum |a_i|^2 E_i - 2 sum_{i<j} |a_i a_j| sqrt(1-E_i) sqrt(1-E_j)`;
//! * subspace bound: `E_min(V) >= sum E_i - (k - 1)`.
//!
//! A strictly positive subspace bound certifies that `V` avoids the set the
//! measure is built on: fully product vectors (CES), biproduct vectors (GES),
//! Schmidt rank below `r`, or `(k-1)`-producible vectors.

use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{self, MeasureSpec, MeasureValue, Method, OptimizerConfig};
use crate::tensor::{schmidt_spectrum, Bipartition, Subspace};

/// A bound must exceed this to count as detection.
pub const DETECTION_TOL: f64 = 1e-9;

/// Tolerance on `sum |alpha_i|^2 = 1` and on probability sums.
pub const WEIGHT_TOL: f64 = 1e-10;

/// What a positive bound certifies about the subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "claim", content = "order", rename_all = "snake_case")]
pub enum Claim {
    /// No fully product vectors.
    Ces,
    /// Every vector is genuinely multipartite entangled.
    Ges,
    /// Every vector has Schmidt rank at least `r` (bipartite).
    SchmidtRankAtLeast(usize),
    /// Every vector has entanglement depth at least `k`.
    EntanglementDepthAtLeast(usize),
    /// Every vector is GME with Schmidt rank at least `r` across every cut.
    GenuineSchmidtRankAtLeast(usize),
}

impl Claim {
    /// Measure whose positive subspace bound establishes the claim.
    pub fn measure(self) -> MeasureSpec {
        match self {
            Claim::Ces => MeasureSpec::Gm,
            Claim::Ges => MeasureSpec::Ggm,
            Claim::SchmidtRankAtLeast(r) => MeasureSpec::SchmidtBounded { r },
            Claim::EntanglementDepthAtLeast(k) => MeasureSpec::Producibility { k },
            Claim::GenuineSchmidtRankAtLeast(r) => MeasureSpec::GmeBoundedRank { r },
        }
    }

    /// Strongest claim certified by a positive bound for `spec` on `n_sites` sites.
    pub fn for_measure(spec: MeasureSpec, n_sites: usize) -> Claim {
        match spec {
            MeasureSpec::Gm => Claim::Ces,
            MeasureSpec::Ggm => Claim::Ges,
            MeasureSpec::SchmidtBounded { r } => Claim::SchmidtRankAtLeast(r),
            MeasureSpec::Producibility { k: 2 } => Claim::Ces,
            MeasureSpec::Producibility { k } if k == n_sites => Claim::Ges,
            MeasureSpec::Producibility { k } => Claim::EntanglementDepthAtLeast(k),
            MeasureSpec::GmeBoundedRank { r: 2 } => Claim::Ges,
            MeasureSpec::GmeBoundedRank { r } => Claim::GenuineSchmidtRankAtLeast(r),
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    /// `ces`, `ges`, `rank:R`, `depth:K`, `gme-rank:R`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.parse::<usize>().map_err(|_| Error::param(format!("bad order `{t}` in claim `{s}`")))
        };
        let claim = match s.split_once(':') {
            None if s == "ces" => Claim::Ces,
            None if s == "ges" => Claim::Ges,
            Some(("rank", r)) => Claim::SchmidtRankAtLeast(num(r)?),
            Some(("depth", k)) => Claim::EntanglementDepthAtLeast(num(k)?),
            Some(("gme-rank", r)) => Claim::GenuineSchmidtRankAtLeast(num(r)?),
            _ => return Err(Error::param(format!("unknown claim `{s}` (expected ces|ges|rank:R|depth:K|gme-rank:R)"))),
        };
        match claim {
            Claim::SchmidtRankAtLeast(r) | Claim::GenuineSchmidtRankAtLeast(r) if r < 2 => {
                Err(Error::param(format!("rank order must be >= 2 in `{s}`")))
            }
            Claim::EntanglementDepthAtLeast(k) if k < 2 => Err(Error::param(format!("depth must be >= 2 in `{s}`"))),
            c => Ok(c),
        }
    }
}

impl std::fmt::Display for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Claim::Ces => write!(f, "CES"),
            Claim::Ges => write!(f, "GES"),
            Claim::SchmidtRankAtLeast(r) => write!(f, "Schmidt rank >= {r}"),
            Claim::EntanglementDepthAtLeast(k) => write!(f, "entanglement depth >= {k}"),
            Claim::GenuineSchmidtRankAtLeast(r) => write!(f, "GES with Schmidt rank >= {r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Detected,
    NotDetected,
}

impl Verdict {
    pub fn from_bound(bound: f64) -> Self {
        if bound > DETECTION_TOL {
            Verdict::Detected
        } else {
            Verdict::NotDetected
        }
    }

    pub fn is_detected(self) -> bool {
        self == Verdict::Detected
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub claim: Claim,
    pub measure: MeasureSpec,
    /// Measure value of each basis vector, in basis order.
    pub values: Vec<f64>,
    pub methods: Vec<Method>,
    /// `sum E_i - (k - 1)`.
    pub bound: f64,
    pub verdict: Verdict,
    /// False when a see-saw value (possible over-estimate) fed the bound.
    pub certified: bool,
    /// `bound - DETECTION_TOL`; positive exactly when detected.
    pub margin: f64,
    pub tolerance: f64,
    /// Every see-saw evaluation reached its convergence threshold.
    pub converged: bool,
}

impl CriterionReport {
    pub fn from_values(claim: Claim, measure: MeasureSpec, values: &[MeasureValue]) -> Self {
        let e: Vec<f64> = values.iter().map(|v| v.value).collect();
        let bound = subspace_bound(&e);
        Self {
            claim,
            measure,
            methods: values.iter().map(|v| v.method).collect(),
            certified: values.iter().all(|v| v.method.is_certified()),
            converged: values.iter().all(|v| v.converged),
            values: e,
            bound,
            verdict: Verdict::from_bound(bound),
            margin: bound - DETECTION_TOL,
            tolerance: DETECTION_TOL,
        }
    }

    /// `Detected (certified)`, `Detected (heuristic)` or `NotDetected`.
    pub fn verdict_label(&self) -> &'static str {
        match (self.verdict, self.certified) {
            (Verdict::Detected, true) => "Detected (certified)",
            (Verdict::Detected, false) => "Detected (heuristic)",
            (Verdict::NotDetected, _) => "NotDetected",
        }
    }
}

fn check_values(e: &[f64]) -> Result<()> {
    if e.is_empty() {
        return Err(Error::param("at least one measure value is required"));
    }
    if let Some(v) = e.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::param(format!("measure value {v} outside [0, 1]")));
    }
    Ok(())
}

/// Lower bound on the measure of `sum_i alpha_i |phi_i>` from the measures of the `phi_i`.
///
/// Can be negative, in which case it says nothing.
pub fn superposition_lower_bound(e: &[f64], alpha: &[Complex64]) -> Result<f64> {
    check_values(e)?;
    if e.len() != alpha.len() {
        return Err(Error::LengthMismatch { expected: e.len(), found: alpha.len() });
    }
    let weight: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
    if (weight - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::param(format!("coefficients have squared norm {weight}, expected 1")));
    }
    let overlap: Vec<f64> = e.iter().map(|v| (1.0 - v).sqrt()).collect();
    let diagonal: f64 = alpha.iter().zip(e).map(|(a, v)| a.norm_sqr() * v).sum();
    let mut cross = 0.0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            cross += alpha[i].norm() * alpha[j].norm() * overlap[i] * overlap[j];
        }
    }
    Ok(diagonal - 2.0 * cross)
}

/// `sum E_i - (k - 1)`: lower bound on the minimal entanglement of the span.
pub fn subspace_bound(e: &[f64]) -> f64 {
    e.iter().sum::<f64>() - (e.len() as f64 - 1.0)
}

/// Superposition weights `a_i = sqrt(1 - E_i) / sqrt(k - sum E)` at which the
/// superposition bound equals the subspace bound.
pub fn optimal_weights(e: &[f64]) -> Vec<f64> {
    let k = e.len() as f64;
    let denom = k - e.iter().sum::<f64>();
    if denom <= 0.0 {
        return vec![1.0 / k.sqrt(); e.len()];
    }
    e.iter().map(|v| ((1.0 - v).max(0.0) / denom).sqrt()).collect()
}

/// Subspace bound in exact rational arithmetic.
pub fn subspace_bound_exact(e: &[BigRational]) -> BigRational {
    let k = BigRational::from_integer((e.len() as i64 - 1).into());
    e.iter().fold(BigRational::zero(), |acc, v| acc + v) - k
}

/// Exact verdict: the bound is strictly positive.
pub fn verdict_exact(e: &[BigRational]) -> Verdict {
    if subspace_bound_exact(e).is_positive() {
        Verdict::Detected
    } else {
        Verdict::NotDetected
    }
}

/// Evaluates `spec` on every basis vector of `v` and applies the subspace bound.
pub fn check_subspace(v: &Subspace, spec: MeasureSpec, config: &OptimizerConfig) -> Result<CriterionReport> {
    let n = v.shape().n_sites();
    let spec = spec.normalized(n)?;
    let values = v
        .basis()
        .par_iter()
        .map(|phi| measures::evaluate(phi, spec, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(CriterionReport::from_values(Claim::for_measure(spec, n), spec, &values))
}

/// Criterion for `claim` on `v`.
pub fn check_claim(v: &Subspace, claim: Claim, config: &OptimizerConfig) -> Result<CriterionReport> {
    let mut report = check_subspace(v, claim.measure(), config)?;
    report.claim = claim;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSumCheck {
    pub r: usize,
    /// `sum_i (lambda^i_1^2 + ... + lambda^i_{r-1}^2)` over basis vectors.
    pub sum: f64,
    pub detected: bool,
}

/// Bipartite criterion in Schmidt-coefficient form: detected when the basis
/// vectors' leading `r - 1` squared Schmidt coefficients sum to less than 1.
pub fn schmidt_sum_check(v: &Subspace, r: usize) -> Result<SchmidtSumCheck> {
    if v.shape().n_sites() != 2 {
        return Err(Error::Unsupported(format!(
            "Schmidt-sum check needs a bipartite system, got {} sites",
            v.shape().n_sites()
        )));
    }
    if r < 2 {
        return Err(Error::param(format!("r must be >= 2, got {r}")));
    }
    let cut = Bipartition::bipartite();
    let mut sum = 0.0;
    for phi in v.basis() {
        sum += crate::tensor::squared_schmidt_spectrum(phi, &cut)?.iter().take(r - 1).sum::<f64>();
    }
    Ok(SchmidtSumCheck { r, sum, detected: sum < 1.0 - DETECTION_TOL })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedKind {
    /// Measure vanishing only on fully product states.
    Entanglement,
    /// Measure vanishing on every biproduct state.
    Genuine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MixedVerdict {
    Entangled,
    GenuinelyEntangled,
    NotDetected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedStateReport {
    pub verdict: MixedVerdict,
    pub bound: f64,
    pub note: String,
}

/// Mixed-state test from the measures of the eigenvectors of `rho = sum p_i |psi_i><psi_i|`.
///
/// Only the support of `rho` matters; the weights are validated but do not enter the bound.
pub fn mixed_state_check(p: &[f64], e: &[f64], kind: MixedKind) -> Result<MixedStateReport> {
    if p.len() != e.len() {
        return Err(Error::LengthMismatch { expected: e.len(), found: p.len() });
    }
    if p.iter().any(|&x| !(x >= 0.0)) || (p.iter().sum::<f64>() - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::param("probabilities must be nonnegative and sum to 1"));
    }
    check_values(e)?;
    // Eigenvectors with zero weight are not in the support.
    let support: Vec<f64> = p.iter().zip(e).filter(|(&w, _)| w > 0.0).map(|(_, &v)| v).collect();
    let bound = subspace_bound(&support);
    let verdict = match (Verdict::from_bound(bound), kind) {
        (Verdict::NotDetected, _) => MixedVerdict::NotDetected,
        (Verdict::Detected, MixedKind::Entanglement) => MixedVerdict::Entangled,
        (Verdict::Detected, MixedKind::Genuine) => MixedVerdict::GenuinelyEntangled,
    };
    Ok(MixedStateReport {
        verdict,
        bound,
        note: "the bound depends only on the support of the state; the probabilities do not enter it".into(),
    })
}

/// Rank bound `min_m { r_m - sum_{i<m} r_i }` over Schmidt ranks sorted ascending.
///
/// A value of at least 2 certifies that every vector of the span is entangled
/// with Schmidt rank at least that value; 1 or less is trivial.
pub fn gour_roy_bound(ranks: &[usize]) -> Result<i64> {
    if ranks.is_empty() {
        return Err(Error::param("at least one Schmidt rank is required"));
    }
    if ranks.contains(&0) {
        return Err(Error::param("Schmidt ranks are at least 1"));
    }
    let mut sorted: Vec<i64> = ranks.iter().map(|&r| r as i64).collect();
    sorted.sort_unstable();
    let mut prefix = 0i64;
    let mut best = i64::MAX;
    for r in sorted {
        best = best.min(r - prefix);
        prefix += r;
    }
    Ok(best)
}

/// Schmidt ranks of the basis vectors of a bipartite subspace.
pub fn schmidt_ranks(v: &Subspace) -> Result<Vec<usize>> {
    let cut = Bipartition::bipartite();
    v.basis().iter().map(|phi| Ok(schmidt_spectrum(phi, &cut)?.rank())).collect()
}

/// `1 - (r-1)/d`: exact `E_r` of any maximally entangled two-qudit vector.
pub fn maximally_entangled_e_r_exact(d: usize, r: usize) -> BigRational {
    BigRational::one() - BigRational::new(((r - 1) as i64).into(), (d as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn superposition_bound_examples() {
        assert!((superposition_lower_bound(&[0.3], &[c(1.0)]).unwrap() - 0.3).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = superposition_lower_bound(&[0.5, 5.0 / 9.0], &[c(s), c(s)]).unwrap();
        assert!((v - (19.0 / 36.0 - 2f64.sqrt() / 3.0)).abs() < 1e-14);
        let v = superposition_lower_bound(&[0.0, 0.0], &[c(0.6), Complex64::new(0.0, 0.8)]).unwrap();
        assert!((v + 2.0 * 0.48).abs() < 1e-14);
        assert!(superposition_lower_bound(&[0.1, 0.2], &[c(1.0), c(1.0)]).is_err());
        assert!(superposition_lower_bound(&[1.5], &[c(1.0)]).is_err());
    }

    #[test]
    fn subspace_bound_examples() {
        assert!((subspace_bound(&[0.5, 5.0 / 9.0]) - 1.0 / 18.0).abs() < 1e-15);
        for d in 3..8 {
            for k in 1..d {
                let e = vec![1.0 - 1.0 / d as f64; k];
                assert!((subspace_bound(&e) - (1.0 - k as f64 / d as f64)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn optimal_weights_attain_subspace_bound() {
        for e in [vec![0.5, 5.0 / 9.0], vec![0.2, 0.9, 0.7], vec![0.0, 0.3]] {
            let a: Vec<Complex64> = optimal_weights(&e).into_iter().map(c).collect();
            let sup = superposition_lower_bound(&e, &a).unwrap();
            assert!((sup - subspace_bound(&e)).abs() < 1e-12);
        }
    }

    #[test]
    fn claims_parse() {
        assert_eq!("ces".parse::<Claim>().unwrap(), Claim::Ces);
        assert_eq!("rank:3".parse::<Claim>().unwrap(), Claim::SchmidtRankAtLeast(3));
        assert_eq!("depth:4".parse::<Claim>().unwrap(), Claim::EntanglementDepthAtLeast(4));
        for bad in ["", "rank", "rank:1", "depth:x", "CES", "ges:2"] {
            assert!(bad.parse::<Claim>().is_err(), "{bad}");
        }
    }

    #[test]
    fn bell_span_checks() {
        let config = OptimizerConfig::default();
        let two = states::bell_subspace(3, &[0, 1]).unwrap();
        let r = check_subspace(&two, MeasureSpec::Gm, &config).unwrap();
        assert_eq!(r.verdict, Verdict::Detected);
        assert!(r.certified);
        assert!((r.bound - 1.0 / 3.0).abs() < 1e-12);

        let all = states::bell_subspace(3, &[0, 1, 2]).unwrap();
        let r = check_subspace(&all, MeasureSpec::Gm, &config).unwrap();
        assert_eq!(r.verdict, Verdict::NotDetected);
        assert!(r.bound.abs() < 1e-12);

        let s = schmidt_sum_check(&two, 2).unwrap();
        assert!((s.sum - 2.0 / 3.0).abs() < 1e-12 && s.detected);
        let s = schmidt_sum_check(&all, 2).unwrap();
        assert!((s.sum - 1.0).abs() < 1e-12 && !s.detected);
        assert!(schmidt_sum_check(&states::ghz_w_subspace(3).unwrap(), 2).is_err());
    }

    #[test]
    fn ghz_w_ggm_is_not_detected() {
        let v = states::ghz_w_subspace(3).unwrap();
        let r = check_subspace(&v, MeasureSpec::Ggm, &OptimizerConfig::default()).unwrap();
        assert_eq!(r.claim, Claim::Ges);
        assert!((r.bound + 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(r.verdict, Verdict::NotDetected);
    }

    #[test]
    fn mixed_states() {
        let r = mixed_state_check(&[0.5, 0.5], &[2.0 / 3.0, 2.0 / 3.0], MixedKind::Genuine).unwrap();
        assert_eq!(r.verdict, MixedVerdict::GenuinelyEntangled);
        let r = mixed_state_check(&[0.9, 0.1], &[0.8, 0.0], MixedKind::Entanglement).unwrap();
        assert_eq!(r.verdict, MixedVerdict::NotDetected);
        let r = mixed_state_check(&[1.0], &[0.1], MixedKind::Entanglement).unwrap();
        assert_eq!(r.verdict, MixedVerdict::Entangled);
        assert!(mixed_state_check(&[0.5, 0.6], &[0.5, 0.5], MixedKind::Entanglement).is_err());
        assert!(mixed_state_check(&[-0.5, 1.5], &[0.5, 0.5], MixedKind::Entanglement).is_err());
    }

    #[test]
    fn gour_roy() {
        assert_eq!(gour_roy_bound(&[4, 2]).unwrap(), 2);
        assert_eq!(gour_roy_bound(&[3, 3]).unwrap(), 0);
        assert_eq!(gour_roy_bound(&[5]).unwrap(), 5);
        assert_eq!(gour_roy_bound(&[2, 4, 8]).unwrap(), 2);
        assert!(gour_roy_bound(&[]).is_err());
    }

    #[test]
    fn exact_bounds() {
        for d in 3..7usize {
            for k in 1..=d {
                let e = vec![maximally_entangled_e_r_exact(d, 2); k];
                let expected = BigRational::new(((d - k) as i64).into(), (d as i64).into());
                assert_eq!(subspace_bound_exact(&e), expected);
                assert_eq!(verdict_exact(&e).is_detected(), k < d);
            }
        }
    }
}
