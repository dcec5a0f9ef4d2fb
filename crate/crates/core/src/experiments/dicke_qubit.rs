//! Largest CES spanned by qubit Dicke states around the centre `k = N/2`.
//!
//! `Pi_m = {D_N,m, ..., D_N,N-m}` is detected iff `sum_k E_GM(D_N,k) > |Pi_m| - 1`,
//! i.e. iff the product overlaps `q_k = C(N,k) k^k (N-k)^(N-k) / N^N` sum to
//! less than one. That comparison is done in integers.

use std::f64::consts::{E, PI};

use num_bigint::BigUint;

use super::{Cell, SweepResult};
use crate::error::{Error, Result};
use crate::measures::closed::dicke_qubit_overlap_numerator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DickeThreshold {
    pub n: u64,
    /// Smallest detected `m`; `None` when not even the central states are detected.
    pub m_star: Option<u64>,
    /// `N - 2 m* + 1`, or 1 for the single central state when `m_star` is `None`.
    pub dim: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AnalyticThreshold {
    pub n: u64,
    /// Closed-form solution for `m` of the Stirling-bounded condition.
    pub m_bound: f64,
    /// Smallest integer `m` satisfying that condition.
    pub m: u64,
    pub dim: u64,
}

fn n_pow_n(n: u64) -> BigUint {
    num_traits::pow(BigUint::from(n), n as usize)
}

/// Exact test of whether `Pi_m` is detected.
pub fn dicke_ces_holds(n: u64, m: u64) -> Result<bool> {
    if n < 2 || 2 * m > n {
        return Err(Error::param(format!("need N >= 2 and m <= N/2, got N={n}, m={m}")));
    }
    let sum: BigUint = (m..=n - m).map(|k| dicke_qubit_overlap_numerator(n, k)).sum();
    Ok(sum < n_pow_n(n))
}

/// `1 - sum_{k=m}^{N-m} q_k` in floating point; positive iff detected.
pub fn dicke_ces_margin_float(n: u64, m: u64) -> f64 {
    let nf = n as f64;
    let ln_q = |k: u64| {
        let ln_binom: f64 = (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum();
        let term = |j: u64| if j == 0 { 0.0 } else { j as f64 * (j as f64 / nf).ln() };
        ln_binom + term(k) + term(n - k)
    };
    1.0 - (m..=n - m).map(|k| ln_q(k).exp()).sum::<f64>()
}

/// Smallest `m` for which `Pi_m` is detected, adding terms outward from the centre.
pub fn dicke_ces_threshold_exact(n: u64) -> Result<DickeThreshold> {
    if n < 2 {
        return Err(Error::param(format!("need N >= 2, got {n}")));
    }
    let limit = n_pow_n(n);
    let mut m = n / 2;
    let mut sum: BigUint = (m..=n - m).map(|k| dicke_qubit_overlap_numerator(n, k)).sum();
    if sum >= limit {
        return Ok(DickeThreshold { n, m_star: None, dim: 1 });
    }
    // m = 0 adds |0...0>, whose overlap alone is 1.
    while m > 1 {
        sum += dicke_qubit_overlap_numerator(n, m - 1) + dicke_qubit_overlap_numerator(n, n - m + 1);
        if sum >= limit {
            break;
        }
        m -= 1;
    }
    Ok(DickeThreshold { n, m_star: Some(m), dim: n - 2 * m + 1 })
}

/// `N/2 - (pi sqrt(N (e^2 (N^2 - 1) + pi^2 N)) - e^2 N) / (2 (e^2 N + pi^2))`.
pub fn m_bound(n: f64) -> f64 {
    let e2 = E * E;
    let pi2 = PI * PI;
    n / 2.0 - (PI * (n * (e2 * (n * n - 1.0) + pi2 * n)).sqrt() - e2 * n) / (2.0 * (e2 * n + pi2))
}

/// Large-`N` form `N/2 - (pi / 2e) sqrt(N)`.
pub fn m_bound_asymptotic(n: f64) -> f64 {
    n / 2.0 - PI / (2.0 * E) * n.sqrt()
}

/// `(N - 2m + 1) (e / 2 pi) sqrt(N / (m (N - m))) < 1`.
fn stirling_condition(n: u64, m: u64) -> bool {
    let (nf, mf) = (n as f64, m as f64);
    (nf - 2.0 * mf + 1.0) * E / (2.0 * PI) * (nf / (mf * (nf - mf))).sqrt() < 1.0
}

/// Detected dimension implied by the Stirling-bounded condition (always a lower bound on the exact one).
pub fn dicke_ces_threshold_analytic(n: u64) -> Result<AnalyticThreshold> {
    if n < 4 {
        return Err(Error::param(format!("need N >= 4, got {n}")));
    }
    // The left side decreases in m on 1..=N/2 and holds at m = N/2.
    let mut m = n / 2;
    while m > 1 && stirling_condition(n, m - 1) {
        m -= 1;
    }
    Ok(AnalyticThreshold { n, m_bound: m_bound(n as f64), m, dim: n - 2 * m + 1 })
}

/// Fig. 1 data for `4 <= N <= n_max`: even `N`, plus odd `N` when `include_odd`.
pub fn fig1_sweep(n_max: u64, include_odd: bool) -> Result<SweepResult> {
    if n_max < 4 {
        return Err(Error::param(format!("n_max must be >= 4, got {n_max}")));
    }
    let mut sweep = SweepResult::new("fig1", &["N", "m_star", "dim_exact", "m_bound", "dim_analytic"], 1);
    sweep.metadata.insert("parity".into(), if include_odd { "all" } else { "even" }.into());
    for n in (4..=n_max).filter(|n| include_odd || n % 2 == 0) {
        let exact = dicke_ces_threshold_exact(n)?;
        let analytic = dicke_ces_threshold_analytic(n)?;
        sweep.push(vec![
            n.into(),
            exact.m_star.map_or(Cell::Missing, Cell::from),
            exact.dim.into(),
            analytic.m_bound.into(),
            analytic.dim.into(),
        ]);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(dicke_ces_threshold_exact(4).unwrap(), DickeThreshold { n: 4, m_star: Some(2), dim: 1 });
        assert_eq!(dicke_ces_threshold_exact(2).unwrap().dim, 1);
        assert!(!dicke_ces_holds(4, 1).unwrap());
        assert!((dicke_ces_margin_float(4, 1) + 56.0 / 256.0).abs() < 1e-14);
        assert!(dicke_ces_threshold_analytic(4).unwrap().dim <= 1);
        // Two central states of N = 3: overlaps 4/9 each.
        assert_eq!(dicke_ces_threshold_exact(3).unwrap().dim, 2);
    }

    #[test]
    fn threshold_is_minimal() {
        for n in 2..60 {
            let t = dicke_ces_threshold_exact(n).unwrap();
            let m = t.m_star.unwrap();
            assert!(dicke_ces_holds(n, m).unwrap());
            assert!(m == 1 || !dicke_ces_holds(n, m - 1).unwrap(), "N={n}");
        }
    }

    #[test]
    fn exact_and_float_agree_in_sign() {
        for n in (4..=120).step_by(2) {
            for m in 1..=n / 2 {
                let margin = dicke_ces_margin_float(n, m);
                assert_eq!(dicke_ces_holds(n, m).unwrap(), margin > 0.0, "N={n} m={m} margin={margin}");
            }
        }
    }

    #[test]
    fn analytic_never_exceeds_exact() {
        for n in 4..=200 {
            let a = dicke_ces_threshold_analytic(n).unwrap();
            let e = dicke_ces_threshold_exact(n).unwrap();
            assert!(a.dim <= e.dim, "N={n}");
            assert!(a.m as f64 > a.m_bound - 1.0);
        }
    }

    #[test]
    fn sweep_schema() {
        let s = fig1_sweep(12, false).unwrap();
        assert!(s.to_csv().starts_with("N,m_star,dim_exact,m_bound,dim_analytic\n4,2,1,"));
        assert_eq!(s.rows.len(), 5);
        s.check_grid().unwrap();
    }
}
