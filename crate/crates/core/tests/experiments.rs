//! Sweep invariants beyond the acceptance checks.

use subspace_ent::experiments::{
    dicke_ces_holds, dicke_ces_margin_float, dicke_ces_threshold_exact, fig1_sweep, fig3_sweep, is_non_decreasing,
    m_bound, m_bound_asymptotic, max_ggm_dicke_curve, qudit_dicke_ges_search,
};

#[test]
fn exact_and_float_agree_near_thresholds() {
    for n in (4..=400u64).step_by(2) {
        let m = dicke_ces_threshold_exact(n).unwrap().m_star.unwrap();
        for mm in [m.saturating_sub(1).max(1), m, (m + 1).min(n / 2)] {
            assert_eq!(dicke_ces_holds(n, mm).unwrap(), dicke_ces_margin_float(n, mm) > 0.0, "N={n} m={mm}");
        }
    }
}

#[test]
fn odd_n_extension() {
    let s = fig1_sweep(41, true).unwrap();
    assert_eq!(s.rows.len(), 38);
    for row in &s.rows {
        let n = row[0].as_int().unwrap();
        let dim = row[2].as_int().unwrap();
        assert_eq!(dim % 2, (n + 1) % 2, "N={n}: central block parity");
        assert!(row[4].as_int().unwrap() <= dim);
    }
}

#[test]
fn m_bound_approaches_square_root_law() {
    let n = 1e4;
    let dev = n / 2.0 - m_bound(n);
    let approx = n / 2.0 - m_bound_asymptotic(n);
    assert!((dev - approx).abs() / approx < 0.01);
    // The closed form sits a constant 1/2 above the square-root law.
    assert!((m_bound(1e8) - m_bound_asymptotic(1e8) - 0.5).abs() < 1e-2);
}

#[test]
fn fig3_rows_non_decreasing_in_d() {
    let s = fig3_sweep().unwrap();
    s.check_grid().unwrap();
    for chunk in s.rows.chunks(9) {
        let dims: Vec<i64> = chunk.iter().map(|r| r[2].as_int().unwrap()).collect();
        assert!(is_non_decreasing(&dims), "{dims:?}");
    }
}

#[test]
fn ges_search_selection_is_optimal_prefix() {
    let s = qudit_dicke_ges_search(4, 5).unwrap();
    assert_eq!(s.chosen.len(), s.dimension);
    assert!(s.bound > num_rational::Ratio::new(0, 1));
    // All-distinct compositions come first: GGM 1 - 1/N is the largest available.
    assert!(s.chosen.iter().all(|c| c.counts().iter().all(|&k| k <= 1)));
}

#[test]
fn max_ggm_curve_shape() {
    let s = max_ggm_dicke_curve(&[3, 4, 5], 2..=12).unwrap();
    s.check_grid().unwrap();
    // The curve is not monotone in N (d = 3: 2/3 at N = 3, 1/2 at N = 4).
    let d3: Vec<f64> = s.rows.iter().filter(|r| r[0].as_int() == Some(3)).map(|r| r[3].as_real().unwrap()).collect();
    assert!(!is_non_decreasing(&d3));
    assert_eq!(s.rows.len(), 33);
}
