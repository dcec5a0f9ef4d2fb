//! Constructors for the named state families.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, combinations, next_permutation, signed_permutations};
use crate::error::{Error, Result};
use crate::tensor::{PureState, Subspace, SystemShape};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn zeros(shape: &SystemShape) -> Vec<Complex64> {
    vec![re(0.0); shape.total_dim()]
}

/// Occupation numbers `(k_0, ..., k_{d-1})` of a qudit Dicke state; `N = sum k_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompositionVector(Vec<usize>);

impl CompositionVector {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::param("a composition needs at least 2 levels"));
        }
        if counts.iter().sum::<usize>() == 0 {
            return Err(Error::param("a composition needs at least one particle"));
        }
        Ok(Self(counts))
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn n_particles(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn n_levels(&self) -> usize {
        self.0.len()
    }
}

impl std::fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 2 || d < 2 {
        return Err(Error::param(format!("need N >= 2 and d >= 2, got N={n}, d={d}")));
    }
    Ok(())
}

/// `(1/sqrt d) sum_i |i>^N`.
pub fn ghz(n: usize, d: usize) -> Result<PureState> {
    ghz_shifted(n, d, 0)
}

/// `(1/sqrt d) sum_i |i>^(N-1) |i + j mod d>`.
pub fn ghz_shifted(n: usize, d: usize, j: usize) -> Result<PureState> {
    check_nd(n, d)?;
    if j >= d {
        return Err(Error::param(format!("shift {j} out of range for d = {d}")));
    }
    let shape = SystemShape::uniform(n, d)?;
    let mut amps = zeros(&shape);
    for i in 0..d {
        let mut levels = vec![i; n];
        levels[n - 1] = (i + j) % d;
        amps[shape.flat_index(&levels)] = re(1.0 / (d as f64).sqrt());
    }
    PureState::new(shape, amps)
}

/// `(1/sqrt d) sum_i omega^(ij) |ii>` with `omega = exp(2 pi i / d)`.
pub fn bell_basis_vector(d: usize, j: usize) -> Result<PureState> {
    check_nd(2, d)?;
    if j >= d {
        return Err(Error::param(format!("index {j} out of range for d = {d}")));
    }
    let shape = SystemShape::uniform(2, d)?;
    let mut amps = zeros(&shape);
    let norm = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        let phase = 2.0 * std::f64::consts::PI * ((i * j) % d) as f64 / d as f64;
        amps[shape.flat_index(&[i, i])] = Complex64::from_polar(norm, phase);
    }
    PureState::new(shape, amps)
}

/// Maximally entangled two-qudit state `|Phi+_d>`.
pub fn maximally_entangled(d: usize) -> Result<PureState> {
    bell_basis_vector(d, 0)
}

/// Symmetric `N`-qubit Dicke state with `k` excitations.
pub fn dicke_qubit(n: usize, k: usize) -> Result<PureState> {
    if k > n {
        return Err(Error::param(format!("excitation number {k} exceeds N = {n}")));
    }
    dicke_qudit(&CompositionVector::new(vec![n - k, k])?)
}

/// Equal-weight superposition of all distinct orderings of `|0>^k0 |1>^k1 ...`.
pub fn dicke_qudit(kvec: &CompositionVector) -> Result<PureState> {
    let n = kvec.n_particles();
    let shape = SystemShape::uniform(n, kvec.n_levels())?;
    let mut levels: Vec<usize> = kvec
        .counts()
        .iter()
        .enumerate()
        .flat_map(|(level, &count)| std::iter::repeat_n(level, count))
        .collect();
    let mut amps = zeros(&shape);
    let mut terms = Vec::new();
    loop {
        terms.push(shape.flat_index(&levels));
        if !next_permutation(&mut levels) {
            break;
        }
    }
    let a = re(1.0 / (terms.len() as f64).sqrt());
    for t in terms {
        amps[t] = a;
    }
    PureState::new(shape, amps)
}

/// Slater determinants spanning the antisymmetric subspace of `(C^d)^N`.
///
/// One state per `N`-subset of levels, subsets in lexicographic order; the
/// term with levels in increasing order carries the `+` sign.
pub fn antisymmetric_basis(n: usize, d: usize) -> Result<Vec<PureState>> {
    check_nd(n, d)?;
    if d < n {
        return Err(Error::param(format!("antisymmetric subspace needs d >= N, got N={n}, d={d}")));
    }
    let shape = SystemShape::uniform(n, d)?;
    let perms = signed_permutations(n);
    let a = 1.0 / (perms.len() as f64).sqrt();
    combinations(d, n)
        .into_iter()
        .map(|subset| {
            let mut amps = zeros(&shape);
            let mut levels = vec![0; n];
            for (p, sign) in &perms {
                for (site, &slot) in p.iter().enumerate() {
                    levels[site] = subset[slot];
                }
                amps[shape.flat_index(&levels)] = re(a * *sign as f64);
            }
            PureState::new(shape.clone(), amps)
        })
        .collect()
}

/// Graph state `prod_{(a,b) in E} CZ_ab |+>^N`.
fn qubit_graph_state(n: usize, edges: &[(usize, usize)]) -> Result<PureState> {
    let shape = SystemShape::uniform(n, 2)?;
    let a = 1.0 / ((1usize << n) as f64).sqrt();
    let amps = (0..shape.total_dim())
        .map(|x| {
            let bit = |s: usize| (x >> (n - 1 - s)) & 1;
            let parity: usize = edges.iter().map(|&(u, v)| bit(u) & bit(v)).sum();
            re(if parity % 2 == 0 { a } else { -a })
        })
        .collect();
    PureState::new(shape, amps)
}

/// Absolutely maximally entangled state for a fixed table of `(N, d)`.
///
/// * `(2, d)`: `|Phi+_d>`.
/// * `(3, 2)`: `|GHZ_3,2>`.
/// * `(4, 3)`: `(1/3) sum_{i,j} |i, j, i+j, i+2j>` (arithmetic mod 3).
/// * `(5, 2)`: graph state of the 5-cycle.
/// * `(6, 2)`: graph state of the 6-vertex wheel (5-cycle plus a hub joined to every vertex).
///
/// AME(4,2) does not exist; other pairs are not tabulated here.
pub fn ame_state(n: usize, d: usize) -> Result<PureState> {
    match (n, d) {
        (2, d) if d >= 2 => maximally_entangled(d),
        (3, 2) => ghz(3, 2),
        (4, 3) => {
            let shape = SystemShape::uniform(4, 3)?;
            let mut amps = zeros(&shape);
            for i in 0..3 {
                for j in 0..3 {
                    amps[shape.flat_index(&[i, j, (i + j) % 3, (i + 2 * j) % 3])] = re(1.0 / 3.0);
                }
            }
            PureState::new(shape, amps)
        }
        (5, 2) => qubit_graph_state(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        (6, 2) => qubit_graph_state(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 5), (2, 5), (3, 5), (4, 5)],
        ),
        (4, 2) => Err(Error::Unsupported("AME(4,2) does not exist".into())),
        _ => Err(Error::Unsupported(format!("no AME construction tabulated for (N, d) = ({n}, {d})"))),
    }
}

/// Supported `(N, d)` pairs of [`ame_state`] with `d` fixed for the bipartite entry.
pub fn ame_whitelist(bipartite_d: usize) -> Vec<(usize, usize)> {
    vec![(2, bipartite_d), (3, 2), (4, 3), (5, 2), (6, 2)]
}

/// Orthogonal complement of the three-qubit "Shifts" UPB
/// `{|000>, |1,+,->, |-,1,+>, |+,-,1>}`.
///
/// Basis obtained by Gram-Schmidt on the computational basis against the UPB,
/// dropping vectors that vanish.
pub fn upb_complement_3qubit() -> Subspace {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let zero = vec![re(1.0), re(0.0)];
    let one = vec![re(0.0), re(1.0)];
    let plus = vec![re(s), re(s)];
    let minus = vec![re(s), re(-s)];
    let upb = [
        [&zero, &zero, &zero],
        [&one, &plus, &minus],
        [&minus, &one, &plus],
        [&plus, &minus, &one],
    ];
    let mut vectors: Vec<Vec<Complex64>> = upb
        .iter()
        .map(|f| PureState::product(&[f[0].clone(), f[1].clone(), f[2].clone()]).expect("qubit factors").into_amplitudes())
        .collect();
    let shape = SystemShape::uniform(3, 2).expect("three qubits");
    for x in 0..8 {
        // Two Gram-Schmidt passes of |x> against everything collected so far.
        let mut r = zeros(&shape);
        r[x] = re(1.0);
        for _pass in 0..2 {
            for v in &vectors {
                let c: Complex64 = v.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
                for (a, b) in r.iter_mut().zip(v) {
                    *a -= c * b;
                }
            }
        }
        let norm = r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            r.iter_mut().for_each(|z| *z /= norm);
            vectors.push(r);
        }
    }
    let basis = vectors[4..]
        .iter()
        .map(|v| PureState::normalized(shape.clone(), v.clone()).expect("nonzero"))
        .collect();
    Subspace::new(basis).expect("orthonormal by construction")
}

/// Span of `|GHZ_N,2>` and `|W_N> = |D_N,1>`.
pub fn ghz_w_subspace(n: usize) -> Result<Subspace> {
    Subspace::new(vec![ghz(n, 2)?, dicke_qubit(n, 1)?])
}

/// Same span as [`ghz_w_subspace`] for three qubits, in the rotated basis
/// `sqrt(2/5) GHZ + sqrt(3/5) W`, `sqrt(3/5) GHZ - sqrt(2/5) W`.
pub fn ghz_w_rotated_subspace() -> Result<Subspace> {
    let v = ghz_w_subspace(3)?;
    let (a, b) = ((2.0f64 / 5.0).sqrt(), (3.0f64 / 5.0).sqrt());
    Subspace::new(vec![v.combine(&[re(a), re(b)])?, v.combine(&[re(b), re(-a)])?])
}

/// Two-qudit (d = 4) pair `(|22> - |33>)/sqrt2`, `(2|00> + |11> + |22> + |33>)/sqrt7`
/// with Schmidt ranks 2 and 4.
pub fn rank_two_four_pair() -> Result<Subspace> {
    let shape = SystemShape::uniform(2, 4)?;
    let mut a = zeros(&shape);
    a[shape.flat_index(&[2, 2])] = re(1.0);
    a[shape.flat_index(&[3, 3])] = re(-1.0);
    let mut b = zeros(&shape);
    b[shape.flat_index(&[0, 0])] = re(2.0);
    for i in 1..4 {
        b[shape.flat_index(&[i, i])] = re(1.0);
    }
    Subspace::new(vec![PureState::normalized(shape.clone(), a)?, PureState::normalized(shape, b)?])
}

/// Span of the listed `bell_basis_vector(d, j)`.
pub fn bell_subspace(d: usize, indices: &[usize]) -> Result<Subspace> {
    Subspace::new(indices.iter().map(|&j| bell_basis_vector(d, j)).collect::<Result<_>>()?)
}

/// Span of the listed `ghz_shifted(n, d, j)`.
pub fn shifted_ghz_subspace(n: usize, d: usize, indices: &[usize]) -> Result<Subspace> {
    Subspace::new(indices.iter().map(|&j| ghz_shifted(n, d, j)).collect::<Result<_>>()?)
}

/// Number of nonzero amplitudes `N! / prod k_i!` of a qudit Dicke state.
pub fn dicke_support_size(kvec: &CompositionVector) -> Option<u128> {
    let mut rest = kvec.n_particles() as u64;
    let mut acc: u128 = 1;
    for &k in kvec.counts() {
        acc = acc.checked_mul(binomial(rest, k as u64)?)?;
        rest -= k as u64;
    }
    Some(acc)
}
