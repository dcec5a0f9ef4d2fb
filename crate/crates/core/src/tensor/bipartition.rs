use serde::{Deserialize, Serialize};

use super::SystemShape;
use crate::error::{Error, Result};

/// A cut `S | complement(S)` of the sites of an `n_sites`-partite system.
///
/// Canonical form keeps the smaller side on the left; when both sides have
/// `N/2` sites, the side holding site 0 is the left one. Every unordered cut
/// has exactly one canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
    n_sites: usize,
}

impl Bipartition {
    /// Builds the cut `left | rest`. `left` must be a nonempty proper subset of `0..n_sites`.
    pub fn new(left: &[usize], n_sites: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        l.dedup();
        if l.len() != left.len() {
            return Err(Error::InvalidBipartition(format!("duplicate sites in {left:?}")));
        }
        if l.is_empty() || l.len() >= n_sites {
            return Err(Error::InvalidBipartition(format!(
                "{left:?} is not a nonempty proper subset of {n_sites} sites"
            )));
        }
        if let Some(&s) = l.iter().find(|&&s| s >= n_sites) {
            return Err(Error::InvalidBipartition(format!("site {s} out of range")));
        }
        let right = (0..n_sites).filter(|s| l.binary_search(s).is_err()).collect();
        Ok(Self { left: l, right, n_sites })
    }

    /// The single cut of a bipartite system.
    pub fn bipartite() -> Self {
        Self { left: vec![0], right: vec![1], n_sites: 2 }
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Same cut with the sides swapped.
    pub fn complement(&self) -> Self {
        Self { left: self.right.clone(), right: self.left.clone(), n_sites: self.n_sites }
    }

    pub fn is_canonical(&self) -> bool {
        let (l, r) = (self.left.len(), self.right.len());
        l < r || (l == r && self.left[0] == 0)
    }

    pub fn canonical(self) -> Self {
        if self.is_canonical() {
            self
        } else {
            self.complement()
        }
    }

    /// Site order with the left block first; used to reshape a state into a matrix.
    pub fn site_order(&self) -> Vec<usize> {
        self.left.iter().chain(&self.right).copied().collect()
    }

    pub(crate) fn check_shape(&self, shape: &SystemShape) -> Result<()> {
        if shape.n_sites() != self.n_sites {
            return Err(Error::InvalidBipartition(format!(
                "cut over {} sites applied to a {}-site shape",
                self.n_sites,
                shape.n_sites()
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for Bipartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let side = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", side(&self.left), side(&self.right))
    }
}

/// All `2^(N-1) - 1` canonical cuts, ordered by left-block size then lexicographically.
pub fn enumerate_bipartitions(shape: &SystemShape) -> Result<Vec<Bipartition>> {
    let n = shape.n_sites();
    if n < 2 {
        return Err(Error::InvalidBipartition(format!("need at least 2 sites, got {n}")));
    }
    if n > 24 {
        return Err(Error::InvalidBipartition(format!("too many sites to enumerate cuts: {n}")));
    }
    let mut cuts: Vec<Bipartition> = (1u32..(1 << n) - 1)
        .map(|mask| {
            let left: Vec<usize> = (0..n).filter(|&s| mask & (1 << s) != 0).collect();
            Bipartition::new(&left, n).expect("mask is a proper subset")
        })
        .filter(Bipartition::is_canonical)
        .collect();
    cuts.sort_by(|a, b| a.left.len().cmp(&b.left.len()).then_with(|| a.left.cmp(&b.left)));
    Ok(cuts)
}
