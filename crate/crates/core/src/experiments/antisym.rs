//! Antisymmetric subspace: every vector has `E_GM = 1 - 1/N!`, so the criterion
//! detects it iff `C(d, N) < N!`.

use super::{Cell, SweepResult};
use crate::combinatorics::{binomial_big, factorial_big};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AntisymRegion {
    pub sweep: SweepResult,
    /// Every point with `N >= floor((d+1)/2) + 1` is detected.
    pub black_line_holds: bool,
    /// Undetected `(d, N)` on or above [`orange_curve`].
    pub orange_violations: Vec<(u64, u64)>,
    /// The same for [`orange_curve_literal`].
    pub orange_violations_literal: Vec<(u64, u64)>,
}

pub fn antisym_detected(d: u64, n: u64) -> bool {
    binomial_big(d, n) < factorial_big(n)
}

/// `floor((d+1)/2) + 1`: detection is guaranteed from here up.
pub fn black_line(d: u64) -> u64 {
    (d + 1) / 2 + 1
}

/// `sqrt(2d+2) + sqrt(d-3) - 1`, an empirical detection boundary (`d >= 3`).
pub fn orange_curve(d: u64) -> Option<f64> {
    (d >= 3).then(|| ((2 * d + 2) as f64).sqrt() + ((d - 3) as f64).sqrt() - 1.0)
}

/// `sqrt(2d+2) - sqrt(d-3) - 1`, the curve as printed in the figure caption.
pub fn orange_curve_literal(d: u64) -> Option<f64> {
    (d >= 3).then(|| ((2 * d + 2) as f64).sqrt() - ((d - 3) as f64).sqrt() - 1.0)
}

/// Detection over `2 <= N <= d <= d_max`.
pub fn antisym_detection_region(d_max: u64) -> Result<AntisymRegion> {
    if d_max < 2 {
        return Err(Error::param(format!("d_max must be >= 2, got {d_max}")));
    }
    let mut sweep = SweepResult::new("fig2", &["d", "N", "detected", "black_line", "orange_curve"], 2);
    let mut black_line_holds = true;
    let mut orange_violations = Vec::new();
    let mut orange_violations_literal = Vec::new();
    for d in 2..=d_max {
        for n in 2..=d {
            let detected = antisym_detected(d, n);
            if n >= black_line(d) && !detected {
                black_line_holds = false;
            }
            if !detected {
                if orange_curve(d).is_some_and(|o| n as f64 >= o) {
                    orange_violations.push((d, n));
                }
                if orange_curve_literal(d).is_some_and(|o| n as f64 >= o) {
                    orange_violations_literal.push((d, n));
                }
            }
            sweep.push(vec![
                d.into(),
                n.into(),
                detected.into(),
                black_line(d).into(),
                orange_curve(d).map_or(Cell::Missing, Cell::from),
            ]);
        }
    }
    Ok(AntisymRegion { sweep, black_line_holds, orange_violations, orange_violations_literal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert!(antisym_detected(3, 3));
        assert!(!antisym_detected(4, 2));
        for d in 2..=50 {
            let n = black_line(d);
            if n <= d {
                assert!(antisym_detected(d, n), "d={d}");
            }
        }
    }

    #[test]
    fn region() {
        let r = antisym_detection_region(50).unwrap();
        assert!(r.black_line_holds);
        assert_eq!(r.orange_violations, vec![(3, 2)]);
        assert!(r.orange_violations_literal.len() > 10);
        assert_eq!(r.sweep.rows.len(), (2..=50).map(|d| d - 1).sum::<usize>());
        r.sweep.check_grid().unwrap();
    }
}
