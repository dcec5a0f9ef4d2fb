//! Geometric measure of k-producibility via block-wise see-saw.

use num_complex::Complex64;

use super::seesaw::{ProductSeesaw, SeesawOutcome};
use super::OptimizerConfig;
use crate::error::{Error, Result};
use crate::tensor::PureState;

/// Largest system for which set partitions are enumerated.
pub const MAX_PRODUCIBILITY_SITES: usize = 8;

/// Set partitions of `0..n` into blocks of size at most `max_block` that are
/// maximal: no two blocks can be merged without exceeding `max_block`.
///
/// Product states over a finer partition are also product over any coarsening,
/// so the overlap maximum over all admissible partitions is attained on these.
pub fn maximal_partitions(n: usize, max_block: usize) -> Vec<Vec<Vec<usize>>> {
    fn recurse(site: usize, n: usize, max_block: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if site == n {
            let mut sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            let mergeable = sizes.len() >= 2 && sizes[0] + sizes[1] <= max_block;
            if !mergeable {
                out.push(blocks.clone());
            }
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].len() < max_block {
                blocks[b].push(site);
                recurse(site + 1, n, max_block, blocks, out);
                blocks[b].pop();
            }
        }
        blocks.push(vec![site]);
        recurse(site + 1, n, max_block, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if max_block >= 1 {
        recurse(0, n, max_block, &mut Vec::new(), &mut out);
    }
    out
}

/// Best block-product overlap of `psi` for one partition of its sites.
pub fn block_product_overlap(psi: &PureState, blocks: &[Vec<usize>], config: &OptimizerConfig) -> SeesawOutcome {
    let order: Vec<usize> = blocks.iter().flatten().copied().collect();
    let permuted = psi.permuted(&order);
    let dims: Vec<usize> = blocks.iter().map(|b| psi.shape().sub_dim(b)).collect();
    let targets = vec![permuted.into_amplitudes()];
    ProductSeesaw::new(&targets, &dims).maximize(config)
}

/// Best block-product certificate over all maximal partitions.
#[derive(Debug, Clone)]
pub struct ProducibilityOutcome {
    pub value: f64,
    pub blocks: Vec<Vec<usize>>,
    pub factors: Vec<Vec<Complex64>>,
    pub converged: bool,
}

/// `1 - max |<phi|psi>|^2` over `(k-1)`-producible `phi`.
pub fn producibility_measure(psi: &PureState, k: usize, config: &OptimizerConfig) -> Result<ProducibilityOutcome> {
    let n = psi.shape().n_sites();
    if k < 2 || k > n {
        return Err(Error::param(format!("producibility order k = {k} outside 2..={n}")));
    }
    if n > MAX_PRODUCIBILITY_SITES {
        return Err(Error::Unsupported(format!(
            "partition enumeration limited to N <= {MAX_PRODUCIBILITY_SITES}, got N = {n}"
        )));
    }
    let mut best: Option<(SeesawOutcome, Vec<Vec<usize>>)> = None;
    for blocks in maximal_partitions(n, k - 1) {
        let outcome = block_product_overlap(psi, &blocks, config);
        if best.as_ref().is_none_or(|(b, _)| outcome.objective > b.objective) {
            best = Some((outcome, blocks));
        }
    }
    let (outcome, blocks) = best.expect("at least one partition");
    Ok(ProducibilityOutcome {
        value: (1.0 - outcome.objective).max(0.0),
        blocks,
        factors: outcome.factors,
        converged: outcome.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{exact, gm_seesaw};
    use crate::states;
    use crate::tensor::SystemShape;

    #[test]
    fn partition_enumeration() {
        // Singletons only.
        assert_eq!(maximal_partitions(4, 1), vec![vec![vec![0], vec![1], vec![2], vec![3]]]);
        // Blocks of size <= N - 1 that cannot merge: exactly the two-block cuts.
        for n in 2..7 {
            let parts = maximal_partitions(n, n - 1);
            assert_eq!(parts.len(), (1 << (n - 1)) - 1);
            assert!(parts.iter().all(|p| p.len() == 2));
        }
        // Four sites, pairs: three perfect matchings.
        assert_eq!(maximal_partitions(4, 2).len(), 3);
    }

    #[test]
    fn k2_matches_gm_and_kn_matches_ggm() {
        let config = OptimizerConfig { restarts: 8, ..Default::default() };
        let w = states::dicke_qubit(3, 1).unwrap();
        let p2 = producibility_measure(&w, 2, &config).unwrap().value;
        assert_eq!(p2, gm_seesaw(&w, &config).value);

        let ghz = states::ghz(3, 2).unwrap();
        let p3 = producibility_measure(&ghz, 3, &config).unwrap().value;
        assert!((p3 - 0.5).abs() < 1e-9);

        let z = Complex64::new(0.0, 0.0);
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let biprod = PureState::new(SystemShape::uniform(3, 2).unwrap(), vec![s, z, z, s, z, z, z, z]).unwrap();
        assert!(producibility_measure(&biprod, 3, &config).unwrap().value < 1e-12);

        let d4 = states::dicke_qubit(4, 2).unwrap();
        let values: Vec<f64> = (2..=4).map(|k| producibility_measure(&d4, k, &config).unwrap().value).collect();
        assert!(values.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{values:?}");
        assert!((values[2] - exact::ggm(&d4).unwrap()).abs() < 1e-7);
        assert!(producibility_measure(&d4, 5, &config).is_err());
        assert!(producibility_measure(&d4, 1, &config).is_err());
    }
}
