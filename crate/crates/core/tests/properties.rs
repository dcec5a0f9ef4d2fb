//! Invariants over random inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use subspace_ent::criterion::{
    check_subspace, optimal_weights, schmidt_sum_check, subspace_bound, superposition_lower_bound,
};
use subspace_ent::measures::{self, e_r, MeasureSpec, OptimizerConfig};
use subspace_ent::oracle::min_subspace_entanglement;
use subspace_ent::random::{haar_state, haar_subspace, random_coefficients, seeded_rng};
use subspace_ent::tensor::{enumerate_bipartitions, schmidt_spectrum, squared_schmidt_spectrum, Bipartition};
use subspace_ent::SystemShape;

fn config() -> OptimizerConfig {
    OptimizerConfig { restarts: 12, ..Default::default() }
}

fn shape_strategy() -> impl Strategy<Value = SystemShape> {
    prop_oneof![
        Just(vec![2, 2]),
        Just(vec![2, 3]),
        Just(vec![3, 3]),
        Just(vec![3, 4]),
        Just(vec![2, 2, 2]),
        Just(vec![2, 3, 2]),
        Just(vec![3, 3, 3]),
        Just(vec![2, 2, 2, 2]),
    ]
    .prop_map(|d| SystemShape::new(d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn bound_never_exceeds_oracle(shape in shape_strategy(), k in 1usize..=3, seed in any::<u64>()) {
        let v = haar_subspace(&shape, k, &mut seeded_rng(seed, 0)).unwrap();
        let specs = if shape.n_sites() == 2 {
            vec![MeasureSpec::SchmidtBounded { r: 2 }]
        } else {
            vec![MeasureSpec::Gm, MeasureSpec::Ggm]
        };
        for spec in specs {
            let bound = check_subspace(&v, spec, &config()).unwrap().bound;
            let oracle = min_subspace_entanglement(&v, spec, &config()).unwrap().min_value;
            prop_assert!(bound <= oracle + 1e-6, "{spec}: {bound} > {oracle}");
        }
    }

    #[test]
    fn superposition_bound_below_measured(shape in shape_strategy(), k in 2usize..=3, seed in any::<u64>()) {
        let mut rng = seeded_rng(seed, 1);
        let v = haar_subspace(&shape, k, &mut rng).unwrap();
        let spec = if shape.n_sites() == 2 { MeasureSpec::SchmidtBounded { r: 2 } } else { MeasureSpec::Ggm };
        let e: Vec<f64> = v.basis().iter().map(|b| measures::evaluate(b, spec, &config()).unwrap().value).collect();
        let alpha = random_coefficients(k, &mut rng);
        let psi = v.combine(&alpha).unwrap();
        let measured = measures::evaluate(&psi, spec, &config()).unwrap().value;
        prop_assert!(superposition_lower_bound(&e, &alpha).unwrap() <= measured + 1e-9);
    }

    #[test]
    fn optimal_weights_reach_subspace_bound(e in prop::collection::vec(0.0f64..=1.0, 1..6)) {
        let a: Vec<Complex64> = optimal_weights(&e).into_iter().map(|x| Complex64::new(x, 0.0)).collect();
        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10);
        let sup = superposition_lower_bound(&e, &a).unwrap();
        prop_assert!((sup - subspace_bound(&e)).abs() < 1e-10, "{sup} vs {}", subspace_bound(&e));
    }

    #[test]
    fn schmidt_sum_matches_measure_route(dims in (2usize..=4, 2usize..=4), k in 1usize..=4, seed in any::<u64>()) {
        let shape = SystemShape::new(vec![dims.0, dims.1]).unwrap();
        let k = k.min(dims.0 * dims.1);
        let v = haar_subspace(&shape, k, &mut seeded_rng(seed, 2)).unwrap();
        let sum = schmidt_sum_check(&v, 2).unwrap();
        let report = check_subspace(&v, MeasureSpec::SchmidtBounded { r: 2 }, &config()).unwrap();
        prop_assert_eq!(sum.detected, report.verdict.is_detected());
    }

    #[test]
    fn schmidt_invariants(shape in shape_strategy(), seed in any::<u64>()) {
        let psi = haar_state(&shape, &mut seeded_rng(seed, 3));
        for cut in enumerate_bipartitions(&shape).unwrap() {
            let s = schmidt_spectrum(&psi, &cut).unwrap();
            let total: f64 = s.squared().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-10);
            let a = squared_schmidt_spectrum(&psi, &cut).unwrap();
            let b = squared_schmidt_spectrum(&psi, &cut.complement()).unwrap();
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn e_r_decreases_in_r(dims in (2usize..=5, 2usize..=5), seed in any::<u64>()) {
        let shape = SystemShape::new(vec![dims.0, dims.1]).unwrap();
        let psi = haar_state(&shape, &mut seeded_rng(seed, 4));
        let cut = Bipartition::bipartite();
        let mut prev = 1.0;
        for r in 2..=dims.0.min(dims.1) + 1 {
            let v = e_r(&psi, &cut, r).unwrap();
            prop_assert!((0.0..=1.0).contains(&v) && v <= prev + 1e-12);
            prev = v;
        }
        prop_assert!(prev.abs() < 1e-12);
    }

    #[test]
    fn ggm_below_gm(shape in shape_strategy(), seed in any::<u64>()) {
        let psi = haar_state(&shape, &mut seeded_rng(seed, 5));
        let ggm = measures::ggm(&psi).unwrap();
        let gm = measures::evaluate(&psi, MeasureSpec::Gm, &config()).unwrap().value;
        prop_assert!(ggm <= gm + 1e-9, "{ggm} > {gm}");
    }
}
