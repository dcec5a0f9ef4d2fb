//! Exact integer combinatorics shared by the state constructors and the sweeps.

use num_bigint::BigUint;
use num_traits::One;

/// `C(n, k)` in u128, `None` on overflow; 0 when `k > n`.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial_big(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Weak compositions of `total` into `parts` nonnegative parts, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let bounds = vec![total; parts];
    bounded_compositions(total, &bounds)
}

/// Vectors `p` with `p[i] <= bounds[i]` and `sum p = total`, in lexicographic order.
pub fn bounded_compositions(total: usize, bounds: &[usize]) -> Vec<Vec<usize>> {
    fn recurse(rest: usize, bounds: &[usize], suffix_cap: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = prefix.len();
        if i == bounds.len() {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Whatever is not placed here must fit in the remaining parts.
        let lo = rest.saturating_sub(suffix_cap[i + 1]);
        let hi = bounds[i].min(rest);
        for v in lo..=hi {
            prefix.push(v);
            recurse(rest - v, bounds, suffix_cap, prefix, out);
            prefix.pop();
        }
    }
    let mut suffix_cap = vec![0usize; bounds.len() + 1];
    for i in (0..bounds.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1].saturating_add(bounds[i]);
    }
    let mut out = Vec::new();
    if suffix_cap[0] >= total {
        recurse(total, bounds, &suffix_cap, &mut Vec::with_capacity(bounds.len()), &mut out);
    }
    out
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Advances to the next lexicographic permutation; false once the sequence wraps.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        v.reverse();
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All permutations of `0..n` with their signs, identity first.
pub fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        out.push((p.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(4, 7), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
        assert_eq!(binomial_big(100, 50).to_string(), "100891344545564193334812497256");
        assert_eq!(factorial_big(10), BigUint::from(3628800u32));
    }

    #[test]
    fn composition_counts() {
        // C(N + d - 1, d - 1)
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(10, 11).len() as u128, binomial(20, 10).unwrap());
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let b = bounded_compositions(2, &[1, 0, 2]);
        assert_eq!(b, vec![vec![0, 0, 2], vec![1, 0, 1]]);
        assert!(bounded_compositions(4, &[1, 1]).is_empty());
    }

    #[test]
    fn subsets_and_permutations() {
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(4, 2)[..3], [vec![0, 1], vec![0, 2], vec![0, 3]]);
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms.iter().map(|(_, s)| *s as i32).sum::<i32>(), 0);
        let mut m = vec![0, 0, 1];
        let mut count = 1;
        while next_permutation(&mut m) {
            count += 1;
        }
        assert_eq!(count, 3);
    }
}
