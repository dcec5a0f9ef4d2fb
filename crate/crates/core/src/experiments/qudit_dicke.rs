//! Qudit Dicke states: largest detected GES and the most entangled state per `(N, d)`.
//!
//! The subspace bound is additive in the basis values, so the best subset of
//! size `k` is the `k` states with the largest GGM. Sorting once and taking
//! prefixes therefore finds the largest detectable span exactly.

use std::ops::RangeInclusive;

use super::{Cell, SweepResult};
use crate::combinatorics::compositions;
use crate::error::{Error, Result};
use crate::measures::closed::{dicke_qudit_max_overlap, small_to_f64, SmallRational};
use crate::states::CompositionVector;

/// Supported particle numbers for the GES search.
pub const GES_SEARCH_N: RangeInclusive<usize> = 3..=10;
/// Supported local dimensions for the GES search.
pub const GES_SEARCH_D: RangeInclusive<usize> = 3..=11;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GesSearch {
    pub n: usize,
    pub d: usize,
    pub dimension: usize,
    /// Compositions of the spanning Dicke states, most entangled first.
    pub chosen: Vec<CompositionVector>,
    /// `1 - sum q_i` over the chosen states (the exact subspace bound); zero if none.
    pub bound: SmallRational,
}

/// Largest `k` such that the `k` most entangled `d`-level Dicke states of `N` particles span a detected GES.
pub fn qudit_dicke_ges_search(n: usize, d: usize) -> Result<GesSearch> {
    if !GES_SEARCH_N.contains(&n) || !GES_SEARCH_D.contains(&d) {
        return Err(Error::param(format!(
            "(N, d) = ({n}, {d}) outside the supported range N in {GES_SEARCH_N:?}, d in {GES_SEARCH_D:?}"
        )));
    }
    let mut scored: Vec<(SmallRational, Vec<usize>)> = compositions(n, d)
        .into_iter()
        .map(|c| Ok((dicke_qudit_max_overlap(&CompositionVector::new(c.clone())?)?, c)))
        .collect::<Result<_>>()?;
    // Stable: equal overlaps keep lexicographic composition order.
    scored.sort_by(|a, b| a.0.cmp(&b.0));
    let one = SmallRational::new(1, 1);
    let mut sum = SmallRational::new(0, 1);
    let mut chosen = Vec::new();
    for (q, c) in scored {
        let next = sum + q;
        if next >= one {
            break;
        }
        sum = next;
        chosen.push(CompositionVector::new(c)?);
    }
    Ok(GesSearch { n, d, dimension: chosen.len(), chosen, bound: one - sum })
}

/// Fig. 3 grid over the supported `(N, d)` range.
pub fn fig3_sweep() -> Result<SweepResult> {
    let mut sweep = SweepResult::new("fig3", &["N", "d", "dimension"], 2);
    for n in GES_SEARCH_N {
        for d in GES_SEARCH_D {
            let s = qudit_dicke_ges_search(n, d)?;
            sweep.push(vec![n.into(), d.into(), s.dimension.into()]);
        }
    }
    Ok(sweep)
}

/// Largest GGM over all compositions of `N` into `d` levels, and a composition attaining it.
pub fn max_ggm_dicke(n: usize, d: usize) -> Result<(SmallRational, CompositionVector)> {
    if n < 2 || d < 2 || n > 60 {
        return Err(Error::param(format!("need 2 <= N <= 60 and d >= 2, got N={n}, d={d}")));
    }
    let mut best: Option<(SmallRational, Vec<usize>)> = None;
    for c in compositions(n, d) {
        let q = dicke_qudit_max_overlap(&CompositionVector::new(c.clone())?)?;
        if best.as_ref().map_or(true, |b| q < b.0) {
            best = Some((q, c));
        }
    }
    let (q, c) = best.expect("at least one composition");
    Ok((SmallRational::new(1, 1) - q, CompositionVector::new(c)?))
}

/// Appendix figure data: maximal qudit Dicke GGM against `N` for each `d`.
pub fn max_ggm_dicke_curve(ds: &[usize], ns: RangeInclusive<usize>) -> Result<SweepResult> {
    let mut sorted = ds.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut sweep = SweepResult::new("figD", &["d", "N", "max_ggm_exact", "max_ggm"], 2);
    for &d in &sorted {
        for n in ns.clone() {
            let (g, _) = max_ggm_dicke(n, d)?;
            sweep.push(vec![d.into(), n.into(), Cell::Text(g.to_string()), small_to_f64(&g).into()]);
        }
    }
    Ok(sweep)
}
