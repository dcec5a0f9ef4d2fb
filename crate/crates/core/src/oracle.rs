//! Direct estimates of `E_min(V) = min_{psi in V} E(psi)`, used to validate criterion bounds.
//!
//! Two independent routes:
//!
//! * projector see-saw: `E_min(V) = 1 - max_{phi in S} <phi|P_V|phi>`, maximized by
//!   alternating updates over the set `S` of the measure;
//! * 2-D grid: for two-dimensional `V`, scan `cos t |phi_1> + e^{i p} sin t |phi_2>`
//!   and evaluate the measure pointwise.
//!
//! Both search for a maximal overlap from below, so `min_value` can only
//! over-estimate the true minimum.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::measures::seesaw::{random_unit_vector, restart_rng, ProductSeesaw};
use crate::measures::{self, MeasureSpec, OptimizerConfig};
use crate::tensor::state::{coefficient_matrix, inner_raw, kron};
use crate::tensor::{enumerate_bipartitions, Bipartition, PureState, Subspace, MAX_TOTAL_DIM};

/// Smallest accepted grid resolution.
pub const MIN_GRID_RESOLUTION: usize = 64;
/// Default grid resolution per axis.
pub const DEFAULT_GRID_RESOLUTION: usize = 256;
/// Refinement window half-width, in coarse cells.
const REFINE_HALF_WIDTH: usize = 5;
/// Refinement subdivisions per coarse cell.
const REFINE_ZOOM: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    ProjectorSeesaw,
    Grid2d,
    /// Grid whose pointwise values come from the see-saw.
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub min_value: f64,
    /// Least entangled vector found, in the subspace basis; unit norm.
    pub coefficients: Vec<Complex64>,
    pub method: OracleMethod,
    pub restarts: usize,
    /// Number of measure evaluations (grid) or optimizer runs (see-saw).
    pub evaluations: usize,
    pub converged: bool,
    /// Cut of the best overlap, for cut-based measures.
    pub cut: Option<Bipartition>,
}

impl OracleResult {
    /// The least entangled vector found.
    pub fn argmin(&self, v: &Subspace) -> Result<PureState> {
        v.combine(&self.coefficients)
    }
}

/// Upper estimate of the minimal entanglement of `v` by the projector see-saw.
///
/// Supports GM, GGM, `E_r` on bipartite systems, and `E^GME_r` (per-cut
/// rank-bounded overlaps). Producibility for `2 < k < N` is not supported.
pub fn min_subspace_entanglement(v: &Subspace, spec: MeasureSpec, config: &OptimizerConfig) -> Result<OracleResult> {
    config.validate()?;
    check_cap(v)?;
    let n = v.shape().n_sites();
    match spec.normalized(n)? {
        MeasureSpec::Gm => Ok(gm_oracle(v, config)),
        MeasureSpec::Ggm => cut_oracle(v, &enumerate_bipartitions(v.shape())?, 1, config),
        MeasureSpec::GmeBoundedRank { r } => cut_oracle(v, &enumerate_bipartitions(v.shape())?, r - 1, config),
        MeasureSpec::SchmidtBounded { r } if n == 2 => cut_oracle(v, &[Bipartition::bipartite()], r - 1, config),
        MeasureSpec::SchmidtBounded { .. } => {
            Err(Error::Unsupported(format!("E_r oracle needs a bipartite system, got N = {n}")))
        }
        other @ MeasureSpec::Producibility { .. } => {
            Err(Error::Unsupported(format!("no projector oracle for {other}")))
        }
    }
}

fn check_cap(v: &Subspace) -> Result<()> {
    let total = v.shape().total_dim();
    if total.saturating_mul(v.dim()) > MAX_TOTAL_DIM {
        return Err(Error::DimensionCap { total: (total * v.dim()) as u128, cap: MAX_TOTAL_DIM });
    }
    Ok(())
}

fn unit_coefficients(mut c: Vec<Complex64>) -> Vec<Complex64> {
    let norm = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-150 {
        c.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        c[0] = Complex64::new(1.0, 0.0);
    } else {
        c.iter_mut().for_each(|z| *z /= norm);
    }
    c
}

fn gm_oracle(v: &Subspace, config: &OptimizerConfig) -> OracleResult {
    let targets: Vec<Vec<Complex64>> = v.basis().iter().map(|b| b.amplitudes().to_vec()).collect();
    let outcome = ProductSeesaw::new(&targets, v.shape().dims()).maximize(config);
    let one = vec![Complex64::new(1.0, 0.0)];
    let product = outcome.factors.iter().fold(one, |acc, f| kron(&acc, f));
    let coefficients = unit_coefficients(targets.iter().map(|t| inner_raw(t, &product)).collect());
    OracleResult {
        min_value: (1.0 - outcome.objective).max(0.0),
        coefficients,
        method: OracleMethod::ProjectorSeesaw,
        restarts: outcome.restarts,
        evaluations: outcome.restarts,
        converged: outcome.converged,
        cut: None,
    }
}

/// Maximizes `sum_t |<Phi|M_t>|^2` over `d_L x d_R` matrices of rank at most `s` and unit norm.
struct RankBoundedOverlap {
    mats: Vec<DMatrix<Complex64>>,
    s: usize,
}

struct FrameRun {
    objective: f64,
    phi: DMatrix<Complex64>,
    converged: bool,
}

impl RankBoundedOverlap {
    fn rows(&self) -> usize {
        self.mats[0].nrows()
    }

    fn cols(&self) -> usize {
        self.mats[0].ncols()
    }

    /// Left frame from the top eigenvectors of `sum_t M_t M_t^dagger`.
    fn spectral_frame(&self) -> DMatrix<Complex64> {
        let dl = self.rows();
        let sum = self.mats.iter().fold(DMatrix::zeros(dl, dl), |acc, m| acc + m * m.adjoint());
        let (_, vecs) = linalg::hermitian_eigen(sum);
        vecs.columns(0, self.s).into_owned()
    }

    fn random_frame(&self, config: &OptimizerConfig, restart: usize) -> DMatrix<Complex64> {
        let mut rng = restart_rng(config.seed, restart);
        let cols: Vec<DVector<Complex64>> =
            (0..self.s).map(|_| DVector::from_vec(random_unit_vector(self.rows(), &mut rng))).collect();
        let (u, _, _) = linalg::sorted_svd(&DMatrix::from_columns(&cols));
        u
    }

    /// Alternates: best `Phi = A X` for the column frame `A`, then best `Phi = Y B^dagger`
    /// for the row frame `B` of the current `Phi`. Each step can only increase the objective.
    fn run(&self, mut frame: DMatrix<Complex64>, config: &OptimizerConfig) -> FrameRun {
        let (dl, dr, s) = (self.rows(), self.cols(), self.s);
        let mut prev = f64::NEG_INFINITY;
        let mut phi = DMatrix::zeros(dl, dr);
        let mut converged = false;
        for _ in 0..config.max_iters {
            let cols: Vec<DVector<Complex64>> = self
                .mats
                .iter()
                .map(|m| DVector::from_column_slice((frame.adjoint() * m).as_slice()))
                .collect();
            let Some((_, x)) = linalg::dominant_direction(&DMatrix::from_columns(&cols)) else { break };
            let x = DMatrix::from_column_slice(s, dr, x.as_slice());
            let (_, _, row_frame) = linalg::sorted_svd(&x);

            let cols: Vec<DVector<Complex64>> =
                self.mats.iter().map(|m| DVector::from_column_slice((m * &row_frame).as_slice())).collect();
            let Some((value, y)) = linalg::dominant_direction(&DMatrix::from_columns(&cols)) else { break };
            let y = DMatrix::from_column_slice(dl, s, y.as_slice());
            phi = &y * row_frame.adjoint();
            frame = linalg::sorted_svd(&y).0;

            let gain = value - prev;
            prev = value;
            if gain < config.tol {
                converged = true;
                break;
            }
        }
        FrameRun { objective: prev.max(0.0), phi, converged }
    }

    fn maximize(&self, config: &OptimizerConfig) -> FrameRun {
        let runs: Vec<FrameRun> = (0..config.restarts)
            .into_par_iter()
            .map(|i| {
                let frame = if i == 0 { self.spectral_frame() } else { self.random_frame(config, i) };
                self.run(frame, config)
            })
            .collect();
        runs.into_iter()
            .reduce(|best, run| if run.objective > best.objective { run } else { best })
            .expect("at least one restart")
    }
}

fn cut_oracle(v: &Subspace, cuts: &[Bipartition], s: usize, config: &OptimizerConfig) -> Result<OracleResult> {
    let shape = v.shape();
    let mut best: Option<(f64, Vec<Complex64>, bool, &Bipartition)> = None;
    for cut in cuts {
        let mats: Vec<DMatrix<Complex64>> =
            v.basis().iter().map(|b| coefficient_matrix(shape, b.amplitudes(), cut)).collect();
        let (value, coefficients, converged) = if s >= mats[0].nrows().min(mats[0].ncols()) {
            // Every vector of V has Schmidt rank <= s across this cut.
            let mut e = vec![Complex64::new(0.0, 0.0); v.dim()];
            e[0] = Complex64::new(1.0, 0.0);
            (1.0, e, true)
        } else {
            let problem = RankBoundedOverlap { mats, s };
            let run = problem.maximize(config);
            let c = problem.mats.iter().map(|m| m.iter().zip(run.phi.iter()).map(|(a, b)| a.conj() * b).sum());
            (run.objective, unit_coefficients(c.collect()), run.converged)
        };
        if best.as_ref().map_or(true, |b| value > b.0) {
            best = Some((value, coefficients, converged, cut));
        }
    }
    let (overlap, coefficients, converged, cut) = best.ok_or_else(|| Error::param("no cuts to optimize over"))?;
    Ok(OracleResult {
        min_value: (1.0 - overlap.min(1.0)).max(0.0),
        coefficients,
        method: OracleMethod::ProjectorSeesaw,
        restarts: config.restarts,
        evaluations: config.restarts * cuts.len(),
        converged,
        cut: Some(cut.clone()),
    })
}

/// Coefficients `(cos t, e^{i p} sin t)` of a grid point.
pub fn grid_coefficients(theta: f64, phase: f64) -> [Complex64; 2] {
    [Complex64::new(theta.cos(), 0.0), Complex64::from_polar(theta.sin(), phase)]
}

/// Measure of `cos t |phi_1> + e^{i p} sin t |phi_2>` by the pointwise route used on the grid.
pub fn grid_point_value(v: &Subspace, spec: MeasureSpec, theta: f64, phase: f64, config: &OptimizerConfig) -> Result<f64> {
    if v.dim() != 2 {
        return Err(Error::param(format!("grid oracle needs a 2-dimensional subspace, got {}", v.dim())));
    }
    let psi = v.combine(&grid_coefficients(theta, phase))?;
    Ok(measures::evaluate(&psi, spec, config)?.value)
}

/// Pointwise evaluator, warm-started along a row for see-saw measures.
struct PointEvaluator<'a> {
    v: &'a Subspace,
    spec: MeasureSpec,
    config: &'a OptimizerConfig,
    seesaw: bool,
}

struct Point {
    value: f64,
    converged: bool,
    factors: Option<Vec<Vec<Complex64>>>,
}

impl PointEvaluator<'_> {
    fn eval(&self, theta: f64, phase: f64, warm: Option<&Vec<Vec<Complex64>>>) -> Result<Point> {
        let psi = self.v.combine(&grid_coefficients(theta, phase))?;
        if !self.seesaw {
            let m = measures::evaluate(&psi, self.spec, self.config)?;
            return Ok(Point { value: m.value, converged: true, factors: None });
        }
        // Reduced see-saw: the spectral start plus the neighbour's optimum.
        let targets = vec![psi.into_amplitudes()];
        let seesaw = ProductSeesaw::new(&targets, self.v.shape().dims());
        let mut best = seesaw.restart(self.config, 0);
        if let Some(f) = warm {
            let t = seesaw.run_from(f.clone(), self.config);
            if t.objective > best.objective {
                best = t;
            }
        }
        Ok(Point { value: (1.0 - best.objective.min(1.0)).max(0.0), converged: best.converged, factors: Some(best.factors) })
    }

    /// Values on the tensor grid `thetas x phases`, rows in parallel.
    fn scan(&self, thetas: &[f64], phases: &[f64]) -> Result<Vec<Point>> {
        let rows: Vec<Vec<Point>> = thetas
            .par_iter()
            .map(|&t| {
                let mut row: Vec<Point> = Vec::with_capacity(phases.len());
                for &p in phases {
                    let warm = row.last().and_then(|q| q.factors.as_ref());
                    let point = self.eval(t, p, warm)?;
                    row.push(point);
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(rows.into_iter().flatten().collect())
    }
}

/// Lowest value; ties go to the lowest linear index.
fn argmin(points: &[Point]) -> usize {
    let mut best = 0;
    for (i, p) in points.iter().enumerate() {
        if p.value < points[best].value {
            best = i;
        }
    }
    best
}

/// Minimal entanglement of a 2-dimensional `v` by scanning `(t, p)` in `[0, pi/2] x [0, 2 pi)`.
///
/// `resolution` points per axis, then one pass at 10x zoom over +-5 cells
/// around the best coarse point.
pub fn min_entanglement_grid_2d(
    v: &Subspace,
    spec: MeasureSpec,
    resolution: usize,
    config: &OptimizerConfig,
) -> Result<OracleResult> {
    use std::f64::consts::{FRAC_PI_2, TAU};
    if v.dim() != 2 {
        return Err(Error::param(format!("grid oracle needs a 2-dimensional subspace, got {}", v.dim())));
    }
    if resolution < MIN_GRID_RESOLUTION {
        return Err(Error::param(format!("grid resolution must be >= {MIN_GRID_RESOLUTION}, got {resolution}")));
    }
    config.validate()?;
    let n = v.shape().n_sites();
    let spec = spec.normalized(n)?;
    let seesaw = match spec {
        MeasureSpec::Gm => n >= 3,
        MeasureSpec::Producibility { .. } => true,
        _ => false,
    };
    let evaluator = PointEvaluator { v, spec, config, seesaw };

    let dt = FRAC_PI_2 / (resolution - 1) as f64;
    let dp = TAU / resolution as f64;
    let thetas: Vec<f64> = (0..resolution).map(|i| i as f64 * dt).collect();
    let phases: Vec<f64> = (0..resolution).map(|j| j as f64 * dp).collect();
    let coarse = evaluator.scan(&thetas, &phases)?;
    let c = argmin(&coarse);
    let (t0, p0) = (thetas[c / resolution], phases[c % resolution]);

    let steps = 2 * REFINE_HALF_WIDTH * REFINE_ZOOM + 1;
    let offset = |k: usize, h: f64| (k as f64 - (REFINE_HALF_WIDTH * REFINE_ZOOM) as f64) * h / REFINE_ZOOM as f64;
    let fine_t: Vec<f64> = (0..steps).map(|k| (t0 + offset(k, dt)).clamp(0.0, FRAC_PI_2)).collect();
    let fine_p: Vec<f64> = (0..steps).map(|k| p0 + offset(k, dp)).collect();
    let fine = evaluator.scan(&fine_t, &fine_p)?;
    let f = argmin(&fine);

    let (mut value, theta, phase) = if fine[f].value < coarse[c].value {
        (fine[f].value, fine_t[f / steps], fine_p[f % steps])
    } else {
        (coarse[c].value, t0, p0)
    };
    let mut converged = coarse.iter().chain(&fine).all(|p| p.converged);
    if seesaw {
        // Full multi-restart evaluation at the winner; both values over-estimate, keep the smaller.
        let psi = v.combine(&grid_coefficients(theta, phase))?;
        let m = measures::evaluate(&psi, spec, config)?;
        if m.value < value {
            value = m.value;
            converged = m.converged;
        }
    }
    Ok(OracleResult {
        min_value: value,
        coefficients: grid_coefficients(theta, phase).to_vec(),
        method: if seesaw { OracleMethod::Hybrid } else { OracleMethod::Grid2d },
        restarts: if seesaw { config.restarts } else { 0 },
        evaluations: coarse.len() + fine.len(),
        converged,
        cut: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use crate::tensor::SystemShape;

    fn quick() -> OptimizerConfig {
        OptimizerConfig { restarts: 8, ..Default::default() }
    }

    fn in_subspace(v: &Subspace, r: &OracleResult) {
        let norm: f64 = r.coefficients.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        let psi = r.argmin(v).unwrap();
        assert!((v.project(&psi).unwrap().norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn single_w_state() {
        let v = Subspace::new(vec![states::dicke_qubit(3, 1).unwrap()]).unwrap();
        let r = min_subspace_entanglement(&v, MeasureSpec::Gm, &quick()).unwrap();
        assert!((r.min_value - 5.0 / 9.0).abs() < 1e-8, "{}", r.min_value);
        in_subspace(&v, &r);
    }

    #[test]
    fn full_bell_span_contains_product() {
        for d in 2..5 {
            let v = states::bell_subspace(d, &(0..d).collect::<Vec<_>>()).unwrap();
            for spec in [MeasureSpec::Gm, MeasureSpec::SchmidtBounded { r: 2 }, MeasureSpec::Ggm] {
                let r = min_subspace_entanglement(&v, spec, &quick()).unwrap();
                assert!(r.min_value < 1e-8, "d={d} {spec}: {}", r.min_value);
                in_subspace(&v, &r);
            }
        }
    }

    #[test]
    fn two_bell_vectors_in_d3() {
        let v = states::bell_subspace(3, &[0, 1]).unwrap();
        let r = min_subspace_entanglement(&v, MeasureSpec::Gm, &quick()).unwrap();
        assert!(r.min_value >= 1.0 / 3.0 - 1e-6);
        let g = min_entanglement_grid_2d(&v, MeasureSpec::Ggm, 64, &quick()).unwrap();
        assert!((g.min_value - r.min_value).abs() < 1e-5, "{} vs {}", g.min_value, r.min_value);
        in_subspace(&v, &g);
    }

    #[test]
    fn schmidt_rank_bounded_route() {
        // Maximally entangled d = 4: E_r = 1 - (r-1)/4 for every vector of its span.
        let v = states::bell_subspace(4, &[0]).unwrap();
        for r in 2..=4 {
            let o = min_subspace_entanglement(&v, MeasureSpec::SchmidtBounded { r }, &quick()).unwrap();
            assert!((o.min_value - (1.0 - (r - 1) as f64 / 4.0)).abs() < 1e-9, "r={r}: {}", o.min_value);
        }
        let o = min_subspace_entanglement(&v, MeasureSpec::SchmidtBounded { r: 5 }, &quick()).unwrap();
        assert_eq!(o.min_value, 0.0);
    }

    #[test]
    fn product_pair_sharing_a_factor() {
        let shape = SystemShape::uniform(2, 2).unwrap();
        let v = Subspace::new(vec![
            PureState::basis(shape.clone(), &[0, 0]).unwrap(),
            PureState::basis(shape, &[0, 1]).unwrap(),
        ])
        .unwrap();
        for spec in [MeasureSpec::Gm, MeasureSpec::Ggm] {
            let g = min_entanglement_grid_2d(&v, spec, 64, &quick()).unwrap();
            assert!(g.min_value < 1e-12);
        }
    }

    #[test]
    fn ghz_w_grid_respects_bound() {
        let v = states::ghz_w_subspace(3).unwrap();
        let g = min_entanglement_grid_2d(&v, MeasureSpec::Gm, 64, &quick()).unwrap();
        assert_eq!(g.method, OracleMethod::Hybrid);
        assert!(g.min_value >= 1.0 / 18.0 - 1e-4, "{}", g.min_value);
        let p = min_subspace_entanglement(&v, MeasureSpec::Gm, &quick()).unwrap();
        assert!(p.min_value >= 1.0 / 18.0 - 1e-4);
    }

    #[test]
    fn rejects_bad_inputs() {
        let v = states::ghz_w_subspace(3).unwrap();
        assert!(min_entanglement_grid_2d(&v, MeasureSpec::Gm, 32, &quick()).is_err());
        let one = v.truncated(1).unwrap();
        assert!(min_entanglement_grid_2d(&one, MeasureSpec::Gm, 64, &quick()).is_err());
        assert!(min_subspace_entanglement(&v, MeasureSpec::SchmidtBounded { r: 2 }, &quick()).is_err());
    }
}
