//! Parameter sweeps behind the figures: qubit Dicke CES thresholds, the
//! antisymmetric detection region, qudit Dicke GES dimensions, the maximal
//! qudit Dicke GGM, and the GHZ+W bound.
//!
//! Every sweep produces a [`SweepResult`] with a fixed CSV column schema:
//!
//! | figure | columns |
//! |---|---|
//! | fig1 | `N,m_star,dim_exact,m_bound,dim_analytic` |
//! | fig2 | `d,N,detected,black_line,orange_curve` |
//! | fig3 | `N,d,dimension` |
//! | figD | `d,N,max_ggm_exact,max_ggm` |
//! | ghz_w | `N,bound,positive` |

mod antisym;
mod dicke_qubit;
mod ghz_w;
mod qudit_dicke;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use antisym::{
    antisym_detected, antisym_detection_region, black_line, orange_curve, orange_curve_literal, AntisymRegion,
};
pub use dicke_qubit::{
    dicke_ces_holds, dicke_ces_margin_float, dicke_ces_threshold_analytic, dicke_ces_threshold_exact, fig1_sweep,
    m_bound, m_bound_asymptotic, AnalyticThreshold, DickeThreshold,
};
pub use ghz_w::{ghz_w_bound, ghz_w_bound_exact, ghz_w_family};
pub use qudit_dicke::{
    fig3_sweep, max_ggm_dicke, max_ggm_dicke_curve, qudit_dicke_ges_search, GesSearch, GES_SEARCH_D, GES_SEARCH_N,
};

/// One CSV field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Bool(bool),
    Real(f64),
    /// Exact values such as `5/8`.
    Text(String),
    Missing,
}

impl Cell {
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Cell::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            Cell::Real(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(v) => Some(*v),
            _ => None,
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Bool(v) => write!(f, "{v}"),
            Cell::Real(v) => write!(f, "{v}"),
            Cell::Text(v) => write!(f, "{v}"),
            Cell::Missing => Ok(()),
        }
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

/// Tabular sweep output. The first `axes.len()` columns are grid coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub name: String,
    pub axes: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: BTreeMap<String, String>,
}

impl SweepResult {
    pub fn new(name: &str, columns: &[&str], n_axes: usize) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert("generator".into(), format!("subspace-ent {}", env!("CARGO_PKG_VERSION")));
        Self {
            name: name.into(),
            axes: columns[..n_axes].iter().map(|s| s.to_string()).collect(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match the schema");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Result<Vec<&Cell>> {
        let i = self.column_index(name).ok_or_else(|| Error::param(format!("no column `{name}` in {}", self.name)))?;
        Ok(self.rows.iter().map(|r| &r[i]).collect())
    }

    /// Checks that grid coordinates are integers in strictly increasing lexicographic order.
    pub fn check_grid(&self) -> Result<()> {
        let n = self.axes.len();
        let keys: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| r[..n].iter().map(|c| c.as_int().ok_or_else(|| Error::param("non-integer grid point"))).collect())
            .collect::<Result<_>>()?;
        if keys.windows(2).all(|w| w[0] < w[1]) {
            Ok(())
        } else {
            Err(Error::param(format!("grid points of {} are not strictly increasing", self.name)))
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::to_string).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }
}

/// Least-squares line `y = slope x + intercept`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::param("a fit needs at least two paired points"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::param("fit abscissae are all equal"));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Exponent `b` of `y ~ a x^b` from a log-log fit.
pub fn power_law_exponent(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.iter().chain(y).any(|v| !(*v > 0.0)) {
        return Err(Error::param("power-law fit needs positive data"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    Ok(linear_fit(&lx, &ly)?.0)
}

/// True if the sequence never decreases.
pub fn is_non_decreasing<T: PartialOrd>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut s = SweepResult::new("t", &["N", "x", "ok", "q"], 1);
        s.push(vec![3usize.into(), 0.5.into(), true.into(), Cell::Text("1/2".into())]);
        s.push(vec![4usize.into(), Cell::Missing, false.into(), Cell::Text("3/4".into())]);
        assert_eq!(s.to_csv(), "N,x,ok,q\n3,0.5,true,1/2\n4,,false,3/4\n");
        s.check_grid().unwrap();
        s.push(vec![4usize.into(), 0.0.into(), true.into(), Cell::Missing]);
        assert!(s.check_grid().is_err());
    }

    #[test]
    fn fits() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
        let (a, b) = linear_fit(&x, &y).unwrap();
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.sqrt()).collect();
        assert!((power_law_exponent(&x, &y).unwrap() - 0.5).abs() < 1e-12);
        assert!(linear_fit(&[1.0], &[1.0]).is_err());
    }
}
