//! Geometric entanglement quantifiers `E(psi) = 1 - max_{phi in S} |<phi|psi>|^2`.
//!
//! | measure | set `S` | route |
//! |---|---|---|
//! | `E_r` (bipartite) | Schmidt rank <= r-1 | exact, Schmidt spectrum |
//! | GGM | biproduct | exact, min over cuts of `1 - lambda_1^2` |
//! | `E^GME_r` | Schmidt rank <= r-1 across some cut | exact, min over cuts of `E_r` |
//! | GM (N >= 3) | fully product | see-saw |
//! | `E^producib_k` | (k-1)-producible | block see-saw |
//!
//! See-saw values are computed from an overlap that is a lower bound on the true
//! maximum, so they can only over-estimate the measure.

pub mod closed;
pub mod exact;
pub mod producibility;
pub mod seesaw;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{Bipartition, PureState};

pub use closed::{
    ggm_dicke_qudit, ggm_dicke_qudit_exact, gm_dicke_qubit_closed, gm_dicke_qubit_exact, gm_dicke_qudit_cut,
    gm_dicke_qudit_cut_exact,
};
pub use exact::{e_r, ggm, ggm_with_cut, gme_bounded_rank};
pub use producibility::producibility_measure;

/// Which geometric measure to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    /// `E_r` for bipartite states.
    SchmidtBounded { r: usize },
    /// Geometric measure of `k`-producibility.
    Producibility { k: usize },
    Gm,
    Ggm,
    /// Genuine entanglement of `r`-bounded Schmidt rank.
    GmeBoundedRank { r: usize },
}

impl MeasureSpec {
    /// Rewrites `Producibility(2)` as GM and `Producibility(N)` as GGM, and checks ranges.
    pub fn normalized(self, n_sites: usize) -> Result<Self> {
        match self {
            MeasureSpec::SchmidtBounded { r } | MeasureSpec::GmeBoundedRank { r } if r < 2 => {
                Err(Error::param(format!("r must be >= 2, got {r}")))
            }
            MeasureSpec::Producibility { k } if k < 2 || k > n_sites => {
                Err(Error::param(format!("producibility order k = {k} outside 2..={n_sites}")))
            }
            MeasureSpec::Producibility { k: 2 } => Ok(MeasureSpec::Gm),
            MeasureSpec::Producibility { k } if k == n_sites => Ok(MeasureSpec::Ggm),
            other => Ok(other),
        }
    }
}

impl std::str::FromStr for MeasureSpec {
    type Err = Error;

    /// `gm`, `ggm`, `er:R`, `producib:K`, `gme:R`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::param(format!("bad order `{t}` in measure `{s}`")));
        let spec = match s.split_once(':') {
            None if s == "gm" => MeasureSpec::Gm,
            None if s == "ggm" => MeasureSpec::Ggm,
            Some(("er", r)) => MeasureSpec::SchmidtBounded { r: num(r)? },
            Some(("producib", k)) => MeasureSpec::Producibility { k: num(k)? },
            Some(("gme", r)) => MeasureSpec::GmeBoundedRank { r: num(r)? },
            _ => return Err(Error::param(format!("unknown measure `{s}` (expected gm|ggm|er:R|producib:K|gme:R)"))),
        };
        match spec {
            MeasureSpec::SchmidtBounded { r } | MeasureSpec::GmeBoundedRank { r } if r < 2 => {
                Err(Error::param(format!("r must be >= 2 in `{s}`")))
            }
            MeasureSpec::Producibility { k } if k < 2 => Err(Error::param(format!("k must be >= 2 in `{s}`"))),
            spec => Ok(spec),
        }
    }
}

impl std::fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeasureSpec::SchmidtBounded { r } => write!(f, "E_{r}"),
            MeasureSpec::Producibility { k } => write!(f, "E^producib_{k}"),
            MeasureSpec::Gm => write!(f, "GM"),
            MeasureSpec::Ggm => write!(f, "GGM"),
            MeasureSpec::GmeBoundedRank { r } => write!(f, "E^GME_{r}"),
        }
    }
}

/// See-saw settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once a full sweep gains less than this.
    pub tol: f64,
    /// Master seed; restart `i` uses stream `i` of ChaCha8 seeded with it.
    pub seed: u64,
}

/// Seed used whenever none is given.
pub const DEFAULT_SEED: u64 = 0x5EED_2024;

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { restarts: 64, max_iters: 500, tol: 1e-11, seed: DEFAULT_SEED }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 || !(self.tol > 0.0) || self.max_iters < 1 {
            return Err(Error::param("optimizer needs restarts >= 1, max_iters >= 1 and tol > 0"));
        }
        Ok(())
    }
}

/// How a measure value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    Exact,
    SeeSaw,
}

impl Method {
    /// True when the value cannot over-estimate the measure.
    pub fn is_certified(self) -> bool {
        !matches!(self, Method::SeeSaw)
    }
}

/// The optimizing element of `S` behind a measure value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    /// Product of normalized factors over blocks of sites.
    BlockProduct { blocks: Vec<Vec<usize>>, factors: Vec<Vec<Complex64>> },
    /// Schmidt truncation of the state to its `rank` leading terms across `cut`.
    SchmidtTruncation { cut: Bipartition, rank: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureValue {
    pub value: f64,
    pub method: Method,
    pub converged: bool,
    pub certificate: Option<Certificate>,
}

impl MeasureValue {
    pub fn closed_form(value: f64) -> Self {
        Self { value, method: Method::ClosedForm, converged: true, certificate: None }
    }
}

/// Geometric measure: `1 - best fully-product overlap` from the see-saw.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeesawMeasure {
    pub value: f64,
    pub overlap: f64,
    pub factors: Vec<Vec<Complex64>>,
    pub converged: bool,
    pub restarts: usize,
}

pub fn gm_seesaw(psi: &PureState, config: &OptimizerConfig) -> SeesawMeasure {
    let targets = vec![psi.amplitudes().to_vec()];
    let outcome = seesaw::ProductSeesaw::new(&targets, psi.shape().dims()).maximize(config);
    SeesawMeasure {
        value: (1.0 - outcome.objective).max(0.0),
        overlap: outcome.objective,
        factors: outcome.factors,
        converged: outcome.converged,
        restarts: outcome.restarts,
    }
}

/// Evaluates `spec` on `psi` through the most exact route available.
pub fn evaluate(psi: &PureState, spec: MeasureSpec, config: &OptimizerConfig) -> Result<MeasureValue> {
    let n = psi.shape().n_sites();
    let spec = spec.normalized(n)?;
    let exact_cut = |value: f64, cut: Bipartition, rank: usize| MeasureValue {
        value,
        method: Method::Exact,
        converged: true,
        certificate: Some(Certificate::SchmidtTruncation { cut, rank }),
    };
    match spec {
        MeasureSpec::SchmidtBounded { r } => {
            if n != 2 {
                return Err(Error::Unsupported(format!("E_r is defined here for bipartite states, got N = {n}")));
            }
            let cut = Bipartition::bipartite();
            Ok(exact_cut(e_r(psi, &cut, r)?, cut, r - 1))
        }
        MeasureSpec::Gm if n == 1 => Ok(MeasureValue { value: 0.0, method: Method::Exact, converged: true, certificate: None }),
        MeasureSpec::Gm if n == 2 => {
            let cut = Bipartition::bipartite();
            Ok(exact_cut(e_r(psi, &cut, 2)?, cut, 1))
        }
        MeasureSpec::Gm => {
            config.validate()?;
            let m = gm_seesaw(psi, config);
            Ok(MeasureValue {
                value: m.value,
                method: Method::SeeSaw,
                converged: m.converged,
                certificate: Some(Certificate::BlockProduct {
                    blocks: (0..n).map(|s| vec![s]).collect(),
                    factors: m.factors,
                }),
            })
        }
        MeasureSpec::Ggm => {
            let m = exact::ggm_with_cut(psi)?;
            Ok(exact_cut(m.value, m.cut, 1))
        }
        MeasureSpec::GmeBoundedRank { r } => {
            let m = exact::min_over_cuts_e_r(psi, r)?;
            Ok(exact_cut(m.value, m.cut, r - 1))
        }
        MeasureSpec::Producibility { k } => {
            config.validate()?;
            let m = producibility_measure(psi, k, config)?;
            Ok(MeasureValue {
                value: m.value,
                method: Method::SeeSaw,
                converged: m.converged,
                certificate: Some(Certificate::BlockProduct { blocks: m.blocks, factors: m.factors }),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    #[test]
    fn spec_normalization() {
        assert_eq!(MeasureSpec::Producibility { k: 2 }.normalized(4).unwrap(), MeasureSpec::Gm);
        assert_eq!(MeasureSpec::Producibility { k: 4 }.normalized(4).unwrap(), MeasureSpec::Ggm);
        assert_eq!(MeasureSpec::Producibility { k: 3 }.normalized(4).unwrap(), MeasureSpec::Producibility { k: 3 });
        assert!(MeasureSpec::Producibility { k: 5 }.normalized(4).is_err());
        assert!(MeasureSpec::SchmidtBounded { r: 1 }.normalized(2).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("gm".parse::<MeasureSpec>().unwrap(), MeasureSpec::Gm);
        assert_eq!("er:3".parse::<MeasureSpec>().unwrap(), MeasureSpec::SchmidtBounded { r: 3 });
        assert_eq!("producib:3".parse::<MeasureSpec>().unwrap(), MeasureSpec::Producibility { k: 3 });
        assert_eq!("gme:2".parse::<MeasureSpec>().unwrap(), MeasureSpec::GmeBoundedRank { r: 2 });
        for bad in ["", "GM", "er", "er:1", "er:-2", "producib:1", "ggm:2", "gme:x"] {
            assert!(bad.parse::<MeasureSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn gm_seesaw_examples() {
        let config = OptimizerConfig::default();
        let w = gm_seesaw(&states::dicke_qubit(3, 1).unwrap(), &config);
        assert!((w.value - 5.0 / 9.0).abs() < 1e-8, "{}", w.value);
        assert!(w.converged);
        let g = gm_seesaw(&states::ghz(4, 2).unwrap(), &config);
        assert!((g.value - 0.5).abs() < 1e-8);
        let prod = crate::tensor::PureState::product(&[
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, -1.0)],
        ])
        .unwrap();
        assert!(gm_seesaw(&prod, &config).value < 1e-10);
    }

    #[test]
    fn evaluate_routes() {
        let config = OptimizerConfig { restarts: 8, ..Default::default() };
        let b = states::bell_basis_vector(3, 1).unwrap();
        let v = evaluate(&b, MeasureSpec::Gm, &config).unwrap();
        assert_eq!(v.method, Method::Exact);
        assert!((v.value - 2.0 / 3.0).abs() < 1e-12);
        let g = states::ghz(3, 3).unwrap();
        let v = evaluate(&g, MeasureSpec::Producibility { k: 3 }, &config).unwrap();
        assert_eq!(v.method, Method::Exact);
        assert!((v.value - 2.0 / 3.0).abs() < 1e-12);
        let v = evaluate(&g, MeasureSpec::Gm, &config).unwrap();
        assert_eq!(v.method, Method::SeeSaw);
        assert!(evaluate(&g, MeasureSpec::SchmidtBounded { r: 2 }, &config).is_err());
    }

    #[test]
    fn ggm_never_exceeds_gm() {
        let config = OptimizerConfig { restarts: 16, ..Default::default() };
        let family = [
            states::ghz(3, 2).unwrap(),
            states::dicke_qubit(4, 1).unwrap(),
            states::dicke_qubit(4, 2).unwrap(),
            states::ame_state(4, 3).unwrap(),
        ];
        for psi in &family {
            assert!(ggm(psi).unwrap() <= gm_seesaw(psi, &config).value + 1e-7);
        }
    }
}
