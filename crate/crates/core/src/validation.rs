//! Property suites and acceptance checks, shared by the test runner and `subspace-ent validate`.
//!
//! Every check compares a criterion bound or closed form against an
//! independent computation: the projector see-saw oracle, the 2-D grid, SVD
//! spectra of explicitly built states, or exact integer arithmetic.

use std::f64::consts::{E, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::combinatorics::compositions;
use crate::criterion::{
    check_subspace, gour_roy_bound, maximally_entangled_e_r_exact, optimal_weights, schmidt_ranks,
    subspace_bound, subspace_bound_exact, superposition_lower_bound, verdict_exact, Verdict,
};
use crate::error::Result;
use crate::experiments;
use crate::measures::{self, MeasureSpec, OptimizerConfig};
use crate::oracle::{self, grid_point_value, min_entanglement_grid_2d, min_subspace_entanglement};
use crate::random::{case_rng, haar_subspace, random_coefficients};
use crate::states::{self, CompositionVector};
use crate::tensor::{PureState, Subspace, SystemShape};

/// Slack allowed between a criterion bound and the oracle value.
pub const SOUNDNESS_TOL: f64 = 1e-6;
/// Agreement required between the projector see-saw and the grid.
pub const CROSS_ORACLE_TOL: f64 = 1e-5;
/// Oracle argmin must have projection norm within this of one.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Slack when comparing the superposition bound with a measured value.
pub const FACT1_TOL: f64 = 1e-5;
/// Seed for the randomized suites.
pub const SUITE_SEED: u64 = 0x0AC0_FFEE;

/// Negative control: shifts every criterion bound before it is compared.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Fault {
    pub bound_offset: f64,
}

pub struct Case {
    pub label: String,
    pub subspace: Subspace,
}

fn case(label: impl Into<String>, v: Result<Subspace>) -> Result<Case> {
    Ok(Case { label: label.into(), subspace: v? })
}

fn basis_state(shape: &SystemShape, levels: &[usize]) -> Result<PureState> {
    PureState::basis(shape.clone(), levels)
}

/// Named subspaces with known structure.
pub fn structured_cases() -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for d in 2..=4 {
        for k in 1..=d {
            let idx: Vec<usize> = (0..k).collect();
            out.push(case(format!("bell d={d} k={k}"), states::bell_subspace(d, &idx))?);
        }
    }
    out.push(case("bell d=3 {0,2}", states::bell_subspace(3, &[0, 2]))?);
    out.push(case("bell d=3 {1,2}", states::bell_subspace(3, &[1, 2]))?);
    for (n, d) in [(3, 2), (3, 3), (4, 2)] {
        for k in 1..=d {
            let idx: Vec<usize> = (0..k).collect();
            out.push(case(format!("shifted ghz n={n} d={d} k={k}"), states::shifted_ghz_subspace(n, d, &idx))?);
        }
    }
    out.push(case("ghz+w n=3", states::ghz_w_subspace(3))?);
    out.push(case("ghz+w n=4", states::ghz_w_subspace(4))?);
    out.push(case("ghz+w n=3 rotated", states::ghz_w_rotated_subspace())?);
    out.push(case("rank (2,4) pair", states::rank_two_four_pair())?);
    for (n, d, k) in [(2, 3, 3), (2, 4, 3), (3, 3, 1), (3, 4, 3)] {
        let basis = states::antisymmetric_basis(n, d)?;
        out.push(case(format!("antisym n={n} d={d} k={k}"), Subspace::new(basis[..k].to_vec()))?);
    }
    for (n, d) in [(2, 3), (2, 4), (3, 2), (4, 3)] {
        out.push(case(format!("ame n={n} d={d}"), Subspace::new(vec![states::ame_state(n, d)?]))?);
    }
    out.push(case("upb complement", Ok(states::upb_complement_3qubit()))?);
    out.push(case("dicke n=3 {1,2}", Subspace::new(vec![states::dicke_qubit(3, 1)?, states::dicke_qubit(3, 2)?]))?);
    out.push(case("dicke n=4 {1,2}", Subspace::new(vec![states::dicke_qubit(4, 1)?, states::dicke_qubit(4, 2)?]))?);
    out.push(case(
        "dicke n=4 {1,2,3}",
        Subspace::new((1..=3).map(|k| states::dicke_qubit(4, k)).collect::<Result<_>>()?),
    )?);
    let q = |c: &[usize]| states::dicke_qudit(&CompositionVector::new(c.to_vec())?);
    out.push(case("qudit dicke (1,1,1),(2,1,0)", Subspace::new(vec![q(&[1, 1, 1])?, q(&[2, 1, 0])?]))?);
    let s22 = SystemShape::uniform(2, 2)?;
    out.push(case(
        "product pair |00>,|01>",
        Subspace::new(vec![basis_state(&s22, &[0, 0])?, basis_state(&s22, &[0, 1])?]),
    )?);
    out.push(case("|00>, bell", Subspace::new(vec![basis_state(&s22, &[0, 1])?, states::bell_basis_vector(2, 0)?]))?);
    Ok(out)
}

/// Haar-random subspaces of dimension 1..=3 over small shapes.
pub fn haar_cases(count: usize, seed: u64) -> Result<Vec<Case>> {
    const SHAPES: [(usize, usize); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)];
    (0..count)
        .map(|i| {
            let (n, d) = SHAPES[i % SHAPES.len()];
            let k = 1 + (i / SHAPES.len()) % 3;
            let shape = SystemShape::uniform(n, d)?;
            let v = haar_subspace(&shape, k, &mut case_rng(seed, i))?;
            Ok(Case { label: format!("haar #{i} n={n} d={d} k={k}"), subspace: v })
        })
        .collect()
}

/// Measures with a projector oracle for this shape.
pub fn oracle_measures(shape: &SystemShape) -> Vec<MeasureSpec> {
    let dims = shape.dims();
    if dims.len() == 2 {
        (2..=dims[0].min(dims[1])).map(|r| MeasureSpec::SchmidtBounded { r }).collect()
    } else {
        let mut specs = vec![MeasureSpec::Gm, MeasureSpec::Ggm];
        if dims.iter().all(|&d| d >= 3) {
            specs.push(MeasureSpec::GmeBoundedRank { r: 3 });
        }
        specs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub elapsed_secs: f64,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), checked: 0, failures: Vec::new(), elapsed_secs: 0.0 }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn summary(&self) -> String {
        format!("{} checks, {} failures", self.checked, self.failures.len())
    }
}

pub struct SoundnessRun {
    pub soundness: SuiteReport,
    pub membership: SuiteReport,
    /// Largest `bound - oracle` seen.
    pub worst_gap: f64,
}

/// Bound from the basis values never exceeds the oracle's minimal entanglement; oracle argmins lie in the span.
pub fn soundness_suite(cases: &[Case], config: &OptimizerConfig, fault: Fault) -> Result<SoundnessRun> {
    let start = Instant::now();
    let mut soundness = SuiteReport::new("soundness");
    let mut membership = SuiteReport::new("membership");
    let mut worst_gap = f64::NEG_INFINITY;
    for c in cases {
        let v = &c.subspace;
        for spec in oracle_measures(v.shape()) {
            let report = check_subspace(v, spec, config)?;
            let o = min_subspace_entanglement(v, spec, config)?;
            let bound = report.bound + fault.bound_offset;
            worst_gap = worst_gap.max(bound - o.min_value);
            soundness.checked += 1;
            if bound > o.min_value + SOUNDNESS_TOL {
                soundness.failures.push(format!("{} {spec}: bound {bound:.9} > oracle {:.9}", c.label, o.min_value));
            }
            let norm = v.project(&o.argmin(v)?)?.norm;
            membership.checked += 1;
            if (norm - 1.0).abs() > MEMBERSHIP_TOL {
                membership.failures.push(format!("{} {spec}: projection norm {norm}", c.label));
            }
        }
    }
    soundness.elapsed_secs = start.elapsed().as_secs_f64();
    membership.elapsed_secs = soundness.elapsed_secs;
    Ok(SoundnessRun { soundness, membership, worst_gap })
}

/// Projector see-saw and 2-D grid agree on every 2-dimensional case.
pub fn cross_oracle_suite(cases: &[Case], resolution: usize, config: &OptimizerConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("cross-oracle");
    for c in cases.iter().filter(|c| c.subspace.dim() == 2) {
        for spec in oracle_measures(c.subspace.shape()) {
            let a = min_subspace_entanglement(&c.subspace, spec, config)?;
            let b = min_entanglement_grid_2d(&c.subspace, spec, resolution, config)?;
            report.checked += 1;
            if (a.min_value - b.min_value).abs() > CROSS_ORACLE_TOL {
                report
                    .failures
                    .push(format!("{} {spec}: see-saw {:.9} vs grid {:.9}", c.label, a.min_value, b.min_value));
            }
        }
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Growing a subspace never increases its oracle minimum.
pub fn monotonicity_suite(config: &OptimizerConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("monotonicity");
    let mut chains: Vec<(String, Subspace)> = vec![
        ("bell d=4".into(), states::bell_subspace(4, &[0, 1, 2, 3])?),
        ("shifted ghz n=3 d=3".into(), states::shifted_ghz_subspace(3, 3, &[0, 1, 2])?),
        ("dicke n=4".into(), Subspace::new((0..=4).map(|k| states::dicke_qubit(4, k)).collect::<Result<_>>()?)?),
        ("antisym n=2 d=4".into(), Subspace::new(states::antisymmetric_basis(2, 4)?)?),
        ("upb complement".into(), states::upb_complement_3qubit()),
    ];
    for (i, (n, d)) in [(2, 3), (3, 2), (2, 4)].into_iter().enumerate() {
        let shape = SystemShape::uniform(n, d)?;
        chains.push((format!("haar n={n} d={d}"), haar_subspace(&shape, 3, &mut case_rng(SUITE_SEED ^ 0xA5, i))?));
    }
    for (label, v) in &chains {
        for spec in oracle_measures(v.shape()) {
            let mut prev = f64::INFINITY;
            for k in 1..=v.dim() {
                let value = min_subspace_entanglement(&v.truncated(k)?, spec, config)?.min_value;
                report.checked += 1;
                if value > prev + SOUNDNESS_TOL {
                    report.failures.push(format!("{label} {spec}: k={k} gives {value:.9} > {prev:.9}"));
                }
                prev = prev.min(value);
            }
        }
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Superposition bound against the measured GM of random superpositions of GHZ_3 and W_3.
pub fn fact1_suite(samples: usize, config: &OptimizerConfig, fault: Fault) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new("superposition bound");
    let v = states::ghz_w_subspace(3)?;
    let e = [0.5, 5.0 / 9.0];
    for i in 0..samples {
        let alpha = random_coefficients(2, &mut case_rng(SUITE_SEED, i));
        let bound = superposition_lower_bound(&e, &alpha)? + fault.bound_offset;
        let theta = alpha[1].norm().atan2(alpha[0].norm());
        let phase = alpha[1].arg() - alpha[0].arg();
        let measured = grid_point_value(&v, MeasureSpec::Gm, theta, phase, config)?;
        report.checked += 1;
        if bound > measured + FACT1_TOL {
            report.failures.push(format!("alpha {alpha:?}: bound {bound:.9} > measured {measured:.9}"));
        }
    }
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

type Check = fn(&Fault) -> std::result::Result<String, String>;

/// One acceptance criterion: a check plus its runtime budget.
pub struct AcceptanceCriterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Duration,
    check: Check,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    pub limit_secs: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:>2} {}: {} [{:.1}s / {:.0}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed_secs,
            self.limit_secs
        )
    }
}

impl AcceptanceCriterion {
    /// Runs the check; a panic or a blown time budget counts as failure.
    pub fn run(&self, fault: &Fault) -> CriterionOutcome {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| (self.check)(fault)))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        if elapsed > self.limit {
            passed = false;
            detail = format!("{detail}; over time budget");
        }
        CriterionOutcome {
            id: self.id,
            title: self.title.into(),
            passed,
            detail,
            elapsed_secs: elapsed.as_secs_f64(),
            limit_secs: self.limit.as_secs_f64(),
        }
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "unknown panic".into())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn acceptance_criteria() -> Vec<AcceptanceCriterion> {
    let secs = Duration::from_secs;
    vec![
        AcceptanceCriterion { id: 1, title: "GM see-saw values", limit: secs(10), check: c1_gm_values },
        AcceptanceCriterion { id: 2, title: "qubit Dicke closed form", limit: secs(120), check: c2_dicke_closed },
        AcceptanceCriterion { id: 3, title: "qudit Dicke GGM vs SVD", limit: secs(120), check: c3_qudit_ggm },
        AcceptanceCriterion { id: 4, title: "criterion soundness", limit: secs(900), check: c4_soundness },
        AcceptanceCriterion { id: 5, title: "superposition bound", limit: secs(300), check: c5_fact1 },
        AcceptanceCriterion { id: 6, title: "Bell-span tightness", limit: secs(300), check: c6_bell },
        AcceptanceCriterion { id: 7, title: "GHZ+W family", limit: secs(120), check: c7_ghz_w },
        AcceptanceCriterion { id: 8, title: "qubit Dicke CES thresholds", limit: secs(300), check: c8_fig1 },
        AcceptanceCriterion { id: 9, title: "antisymmetric detection region", limit: secs(10), check: c9_fig2 },
        AcceptanceCriterion { id: 10, title: "qudit Dicke GES dimensions", limit: secs(600), check: c10_fig3 },
        AcceptanceCriterion { id: 11, title: "rank-bound duality", limit: secs(10), check: c11_duality },
        AcceptanceCriterion { id: 12, title: "AME and antisymmetric constants", limit: secs(300), check: c12_constants },
    ]
}

fn c1_gm_values(_: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    for n in 3..=6 {
        let g = measures::gm_seesaw(&lib(states::ghz(n, 2))?, &config);
        worst = worst.max((g.value - 0.5).abs());
        ensure((g.value - 0.5).abs() < 1e-7, || format!("GM(GHZ_{n}) = {}", g.value))?;
    }
    let w = measures::gm_seesaw(&lib(states::dicke_qubit(3, 1))?, &config);
    ensure((w.value - 5.0 / 9.0).abs() < 1e-7, || format!("GM(W_3) = {}", w.value))?;
    worst = worst.max((w.value - 5.0 / 9.0).abs());
    Ok(format!("GHZ_3..6 = 1/2, W_3 = 5/9, max error {worst:.1e}"))
}

fn c2_dicke_closed(_: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=6 {
        for k in 0..=n {
            let closed = lib(measures::gm_dicke_qubit_closed(n as u64, k as u64))?;
            let seesaw = measures::gm_seesaw(&lib(states::dicke_qubit(n, k))?, &config).value;
            worst = worst.max((closed - seesaw).abs());
            count += 1;
            ensure((closed - seesaw).abs() < 1e-6, || format!("N={n} k={k}: closed {closed} vs see-saw {seesaw}"))?;
        }
    }
    Ok(format!("{count} states, max deviation {worst:.1e}"))
}

fn c3_qudit_ggm(_: &Fault) -> std::result::Result<String, String> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 2..=6 {
        for d in 2..=4 {
            for counts in compositions(n, d) {
                let kvec = lib(CompositionVector::new(counts))?;
                let closed = lib(measures::ggm_dicke_qudit(&kvec))?;
                let svd = lib(measures::ggm(&lib(states::dicke_qudit(&kvec))?))?;
                worst = worst.max((closed - svd).abs());
                count += 1;
                ensure((closed - svd).abs() < 1e-9, || format!("{kvec}: closed {closed} vs SVD {svd}"))?;
            }
        }
    }
    Ok(format!("{count} compositions, max deviation {worst:.1e}"))
}

fn c4_soundness(fault: &Fault) -> std::result::Result<String, String> {
    let mut cases = lib(structured_cases())?;
    let structured = cases.len();
    cases.extend(lib(haar_cases(180, SUITE_SEED))?);
    let run = lib(soundness_suite(&cases, &OptimizerConfig::default(), *fault))?;
    ensure(cases.len() >= 200, || format!("only {} subspaces", cases.len()))?;
    ensure(run.soundness.passed(), || {
        format!("{} violations, first: {}", run.soundness.failures.len(), run.soundness.failures[0])
    })?;
    Ok(format!(
        "{} subspaces ({structured} structured), {}; worst bound - oracle = {:.2e}",
        cases.len(),
        run.soundness.summary(),
        run.worst_gap
    ))
}

fn c5_fact1(fault: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig { restarts: 8, ..Default::default() };
    let report = lib(fact1_suite(10_000, &config, *fault))?;
    ensure(report.passed(), || format!("{} violations, first: {}", report.failures.len(), report.failures[0]))?;
    let mut worst: f64 = 0.0;
    for e in [vec![0.5, 5.0 / 9.0], vec![0.2, 0.9, 0.7], vec![2.0 / 3.0; 3], vec![0.1, 0.95]] {
        let a: Vec<Complex64> = optimal_weights(&e).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        let gap = (lib(superposition_lower_bound(&e, &a))? - subspace_bound(&e)).abs();
        worst = worst.max(gap);
        ensure(gap < 1e-10, || format!("optimal weights miss the subspace bound by {gap:e} for {e:?}"))?;
    }
    Ok(format!("{}; optimal weights attain the subspace bound within {worst:.1e}", report.summary()))
}

fn c6_bell(_: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig::default();
    let mut spans = 0;
    for d in 2..=6usize {
        for k in 1..d {
            let exact = vec![maximally_entangled_e_r_exact(d, 2); k];
            let expected = BigRational::new(BigInt::from(d - k), BigInt::from(d));
            ensure(subspace_bound_exact(&exact) == expected, || format!("d={d} k={k}: rational bound mismatch"))?;
            ensure(verdict_exact(&exact) == Verdict::Detected, || format!("d={d} k={k}: not detected (exact)"))?;
            let v = lib(states::bell_subspace(d, &(0..k).collect::<Vec<_>>()))?;
            let r = lib(check_subspace(&v, MeasureSpec::Gm, &config))?;
            ensure(r.verdict == Verdict::Detected && r.certified, || format!("d={d} k={k}: {}", r.verdict_label()))?;
            ensure((r.bound - (d - k) as f64 / d as f64).abs() < 1e-12, || format!("d={d} k={k}: bound {}", r.bound))?;
            spans += 1;
        }
        let all = lib(states::bell_subspace(d, &(0..d).collect::<Vec<_>>()))?;
        let exact = vec![maximally_entangled_e_r_exact(d, 2); d];
        ensure(!subspace_bound_exact(&exact).is_positive(), || format!("d={d}: full span bound positive"))?;
        let r = lib(check_subspace(&all, MeasureSpec::Gm, &config))?;
        ensure(r.verdict == Verdict::NotDetected, || format!("d={d}: full span detected"))?;
        let o = lib(min_subspace_entanglement(&all, MeasureSpec::Gm, &config))?;
        ensure(o.min_value < 1e-6, || format!("d={d}: oracle finds GM {} in the full span", o.min_value))?;
        spans += 1;
    }
    Ok(format!("{spans} spans for d = 2..6: bounds 1 - k/d exact, full spans contain product vectors"))
}

fn c7_ghz_w(_: &Fault) -> std::result::Result<String, String> {
    for n in 3..=10_000u64 {
        let b = experiments::ghz_w_bound(n);
        ensure(b > 0.0, || format!("N={n}: bound {b}"))?;
        if n <= 200 {
            ensure(experiments::ghz_w_bound_exact(n).is_positive(), || format!("N={n}: exact bound not positive"))?;
        }
        if n <= 60 {
            let via = subspace_bound(&[0.5, lib(measures::gm_dicke_qubit_closed(n, 1))?]);
            ensure((via - b).abs() < 1e-12, || format!("N={n}: {via} vs {b}"))?;
        }
    }
    let v = lib(states::ghz_w_subspace(3))?;
    let g = lib(min_entanglement_grid_2d(&v, MeasureSpec::Gm, oracle::DEFAULT_GRID_RESOLUTION, &OptimizerConfig::default()))?;
    ensure(g.min_value >= 1.0 / 18.0 - 1e-4, || format!("grid minimum {} below 1/18", g.min_value))?;
    Ok(format!(
        "bound positive for N = 3..10^4 (limit {:.4}); N=3 grid minimum {:.6} >= 1/18",
        experiments::ghz_w_bound(10_000),
        g.min_value
    ))
}

fn c8_fig1(_: &Fault) -> std::result::Result<String, String> {
    for n in (4..=400u64).step_by(2) {
        let exact = lib(experiments::dicke_ces_threshold_exact(n))?;
        let analytic = lib(experiments::dicke_ces_threshold_analytic(n))?;
        ensure(analytic.dim <= exact.dim, || format!("N={n}: analytic {} > exact {}", analytic.dim, exact.dim))?;
    }
    let (mut x, mut y, mut ns) = (Vec::new(), Vec::new(), Vec::new());
    for n in (100..=2000u64).step_by(2) {
        let exact = lib(experiments::dicke_ces_threshold_exact(n))?;
        x.push((n as f64).sqrt());
        y.push(exact.dim as f64);
        ns.push(n as f64);
    }
    let (slope, _) = lib(experiments::linear_fit(&x, &y))?;
    let exponent = lib(experiments::power_law_exponent(&ns, &y))?;
    let rel = (slope - PI / E).abs() / (PI / E);
    ensure(rel < 0.10, || format!("slope {slope:.4} is {:.1}% from pi/e", 100.0 * rel))?;
    ensure((exponent - 0.5).abs() < 0.05, || format!("exponent {exponent:.4}"))?;
    Ok(format!(
        "analytic <= exact for even N <= 400; slope vs sqrt N = {slope:.4} ({:.1}% from pi/e), exponent {exponent:.3}",
        100.0 * rel
    ))
}

fn c9_fig2(_: &Fault) -> std::result::Result<String, String> {
    let r = lib(experiments::antisym_detection_region(50))?;
    ensure(r.black_line_holds, || "a point above floor((d+1)/2)+1 is undetected".into())?;
    ensure(r.orange_violations.len() <= 10, || format!("{} points violate the orange curve", r.orange_violations.len()))?;
    Ok(format!(
        "{} points; black line holds; orange-curve exceptions {} at {:?} (caption sign: {})",
        r.sweep.rows.len(),
        r.orange_violations.len(),
        r.orange_violations,
        r.orange_violations_literal.len()
    ))
}

/// `FIG3_DIMENSIONS[N - 3][d - 3]`: largest detected GES of qudit Dicke states.
pub const FIG3_DIMENSIONS: [[usize; 9]; 8] = [
    [1, 2, 2, 2, 2, 2, 2, 2, 2],
    [1, 2, 3, 3, 3, 3, 3, 3, 3],
    [2, 2, 2, 4, 4, 4, 4, 4, 4],
    [2, 2, 2, 3, 5, 5, 5, 5, 5],
    [2, 3, 3, 3, 3, 6, 6, 6, 6],
    [2, 2, 3, 3, 3, 4, 7, 7, 7],
    [2, 2, 4, 4, 4, 4, 4, 8, 8],
    [2, 3, 3, 4, 4, 4, 4, 5, 9],
];

fn c10_fig3(_: &Fault) -> std::result::Result<String, String> {
    let sweep = lib(experiments::fig3_sweep())?;
    ensure(sweep.rows.len() == 72, || format!("{} grid points", sweep.rows.len()))?;
    for row in &sweep.rows {
        let (n, d, dim) = (row[0].as_int().unwrap_or(0), row[1].as_int().unwrap_or(0), row[2].as_int().unwrap_or(-1));
        if d > n {
            ensure(dim >= n - 1, || format!("(N, d) = ({n}, {d}): dimension {dim} < N - 1"))?;
        }
        let frozen = FIG3_DIMENSIONS[(n - 3) as usize][(d - 3) as usize] as i64;
        ensure(dim == frozen, || format!("(N, d) = ({n}, {d}): dimension {dim}, regression value {frozen}"))?;
    }
    Ok("72 grid points; dimension >= N - 1 whenever d > N; matches regression table".into())
}

fn c11_duality(_: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig::default();
    let pair = lib(states::rank_two_four_pair())?;
    let ranks = lib(schmidt_ranks(&pair))?;
    let gr = lib(gour_roy_bound(&ranks))?;
    ensure(gr >= 2, || format!("Gour-Roy gives {gr} for ranks {ranks:?}"))?;
    let r = lib(check_subspace(&pair, MeasureSpec::SchmidtBounded { r: 2 }, &config))?;
    ensure(r.bound <= 0.0, || format!("subspace bound {} for the rank pair", r.bound))?;
    let bell = lib(states::bell_subspace(3, &[0, 1]))?;
    let ranks_b = lib(schmidt_ranks(&bell))?;
    let gr_b = lib(gour_roy_bound(&ranks_b))?;
    ensure(gr_b == 0, || format!("Gour-Roy gives {gr_b} for two Bell vectors"))?;
    let rb = lib(check_subspace(&bell, MeasureSpec::SchmidtBounded { r: 2 }, &config))?;
    ensure(rb.verdict == Verdict::Detected, || format!("two Bell vectors: bound {}", rb.bound))?;
    Ok(format!(
        "ranks {ranks:?}: Gour-Roy {gr}, bound {:.4}; Bell ranks {ranks_b:?}: Gour-Roy {gr_b}, bound {:.4}",
        r.bound, rb.bound
    ))
}

fn c12_constants(_: &Fault) -> std::result::Result<String, String> {
    let config = OptimizerConfig::default();
    let mut pairs: Vec<(usize, usize)> = (2..=6).flat_map(states::ame_whitelist).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for &(n, d) in &pairs {
        let g = lib(measures::ggm(&lib(states::ame_state(n, d))?))?;
        ensure((g - (1.0 - 1.0 / d as f64)).abs() < 1e-10, || format!("GGM(AME({n},{d})) = {g}"))?;
    }
    let mut count = 0;
    for n in 2..=4usize {
        let fact: f64 = (1..=n).map(|i| i as f64).product();
        for d in n..=5 {
            for (j, psi) in lib(states::antisymmetric_basis(n, d))?.iter().enumerate() {
                let g = lib(measures::ggm(psi))?;
                ensure((g - (1.0 - 1.0 / n as f64)).abs() < 1e-10, || format!("GGM antisym ({n},{d}) #{j} = {g}"))?;
                let gm = measures::gm_seesaw(psi, &config).value;
                ensure((gm - (1.0 - 1.0 / fact)).abs() < 1e-6, || format!("GM antisym ({n},{d}) #{j} = {gm}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{} AME states with GGM 1 - 1/d; {count} antisymmetric states with GGM 1 - 1/N, GM 1 - 1/N!", pairs.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupOutcome {
    pub group: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_secs: f64,
    /// Acceptance criteria this group exercises.
    pub covers: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub suite: Suite,
    pub passed: bool,
    pub groups: Vec<GroupOutcome>,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<&str> {
        self.groups.iter().filter(|g| !g.passed).map(|g| g.group.as_str()).collect()
    }
}

fn suite_group(report: Result<SuiteReport>, covers: Vec<u8>) -> GroupOutcome {
    match report {
        Ok(r) => GroupOutcome {
            group: r.name.clone(),
            passed: r.passed(),
            detail: match r.failures.first() {
                None => r.summary(),
                Some(f) => format!("{}; first: {f}", r.summary()),
            },
            elapsed_secs: r.elapsed_secs,
            covers,
        },
        Err(e) => GroupOutcome { group: "suite".into(), passed: false, detail: e.to_string(), elapsed_secs: 0.0, covers },
    }
}

/// Runs the property suites (`Quick`) or every acceptance criterion plus the suites (`Full`).
pub fn validate(suite: Suite, fault: Fault) -> ValidationReport {
    let mut groups = Vec::new();
    match suite {
        Suite::Quick => {
            let config = OptimizerConfig { restarts: 16, ..Default::default() };
            let cases = structured_cases().and_then(|mut c| {
                c.extend(haar_cases(24, SUITE_SEED)?);
                Ok(c)
            });
            match cases {
                Ok(cases) => match soundness_suite(&cases, &config, fault) {
                    Ok(run) => {
                        groups.push(suite_group(Ok(run.soundness), vec![4]));
                        groups.push(suite_group(Ok(run.membership), vec![]));
                    }
                    Err(e) => groups.push(suite_group(Err(e), vec![4])),
                },
                Err(e) => groups.push(suite_group(Err(e), vec![4])),
            }
            let pairs = structured_cases().map(|c| {
                c.into_iter().filter(|c| c.subspace.dim() == 2 && c.subspace.shape().n_sites() == 2).collect::<Vec<_>>()
            });
            groups.push(suite_group(pairs.and_then(|c| cross_oracle_suite(&c, 64, &config)), vec![]));
            groups.push(suite_group(fact1_suite(500, &config, fault), vec![5]));
            for c in acceptance_criteria().into_iter().filter(|c| [1, 6, 9, 11].contains(&c.id)) {
                groups.push(criterion_group(c.run(&fault)));
            }
        }
        Suite::Full => {
            for c in acceptance_criteria() {
                groups.push(criterion_group(c.run(&fault)));
            }
            let config = OptimizerConfig::default();
            let cases = structured_cases().and_then(|mut c| {
                c.extend(haar_cases(36, SUITE_SEED ^ 1)?);
                Ok(c)
            });
            groups.push(suite_group(cases.and_then(|c| cross_oracle_suite(&c, oracle::DEFAULT_GRID_RESOLUTION, &config)), vec![7]));
            groups.push(suite_group(monotonicity_suite(&config), vec![]));
        }
    }
    ValidationReport { suite, passed: groups.iter().all(|g| g.passed), groups }
}

fn criterion_group(o: CriterionOutcome) -> GroupOutcome {
    GroupOutcome {
        group: format!("criterion {}: {}", o.id, o.title),
        passed: o.passed,
        detail: o.detail,
        elapsed_secs: o.elapsed_secs,
        covers: vec![o.id],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_families_build() {
        let s = structured_cases().unwrap();
        assert!(s.len() >= 30);
        let h = haar_cases(18, 7).unwrap();
        assert_eq!(h.len(), 18);
        assert!(h.iter().any(|c| c.subspace.dim() == 3));
    }

    #[test]
    fn fault_injection_is_caught() {
        let cases = vec![Case { label: "bell".into(), subspace: states::bell_subspace(3, &[0, 1]).unwrap() }];
        let config = OptimizerConfig { restarts: 4, ..Default::default() };
        let clean = soundness_suite(&cases, &config, Fault::default()).unwrap();
        assert!(clean.soundness.passed());
        let tampered = soundness_suite(&cases, &config, Fault { bound_offset: 0.5 }).unwrap();
        assert!(!tampered.soundness.passed());
    }
}
