//! Closed forms for Dicke states, exact in rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive};

use crate::combinatorics::{binomial, binomial_big};
use crate::error::{Error, Result};
use crate::states::CompositionVector;

/// Exact rationals over u128, used for qudit Dicke overlaps (denominators are binomials).
pub type SmallRational = Ratio<u128>;

/// `C(N,k) k^k (N-k)^(N-k)`: numerator of the maximal product overlap of `|D_N,k>`
/// over the common denominator `N^N`.
pub fn dicke_qubit_overlap_numerator(n: u64, k: u64) -> BigUint {
    let pow = |base: u64, e: u64| -> BigUint { num_traits::pow(BigUint::from(base), e as usize) };
    binomial_big(n, k) * pow(k, k) * pow(n - k, n - k)
}

/// `E_GM(|D_N,k>) = 1 - C(N,k) (k/N)^k ((N-k)/N)^(N-k)`, exactly.
pub fn gm_dicke_qubit_exact(n: u64, k: u64) -> Result<BigRational> {
    if k > n || n == 0 {
        return Err(Error::param(format!("need 0 <= k <= N and N >= 1, got N={n}, k={k}")));
    }
    let num = BigInt::from(dicke_qubit_overlap_numerator(n, k));
    let den = BigInt::from(num_traits::pow(BigUint::from(n), n as usize));
    Ok(BigRational::one() - BigRational::new(num, den))
}

pub fn gm_dicke_qubit_closed(n: u64, k: u64) -> Result<f64> {
    Ok(big_to_f64(&gm_dicke_qubit_exact(n, k)?))
}

pub fn big_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn small_to_f64(x: &SmallRational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Largest squared Schmidt coefficient of `|D^d_N,k>` across an `n | N-n` cut:
/// `max_pi prod_i C(k_i, pi_i) / C(N, n)` over `pi_i <= k_i`, `sum pi_i = n`.
pub fn dicke_qudit_cut_overlap(kvec: &CompositionVector, n: usize) -> Result<SmallRational> {
    let total = kvec.n_particles();
    if n == 0 || n > total / 2 {
        return Err(Error::param(format!("cut size n = {n} outside 1..={}", total / 2)));
    }
    let overflow = || Error::param(format!("binomials overflow for N = {total}"));
    let den = binomial(total as u64, n as u64).ok_or_else(overflow)?;
    // Knapsack over levels: best[j] = max prod C(k_i, pi_i) with sum pi_i = j so far.
    let mut best: Vec<Option<u128>> = vec![None; n + 1];
    best[0] = Some(1);
    for &k in kvec.counts() {
        let mut next: Vec<Option<u128>> = vec![None; n + 1];
        for (j, b) in best.iter().enumerate() {
            let Some(b) = *b else { continue };
            for p in 0..=k.min(n - j) {
                let c = binomial(k as u64, p as u64).ok_or_else(overflow)?;
                let v = b.checked_mul(c).ok_or_else(overflow)?;
                if next[j + p].map_or(true, |x| v > x) {
                    next[j + p] = Some(v);
                }
            }
        }
        best = next;
    }
    let best = best[n].expect("n <= N is always reachable");
    Ok(Ratio::new(best, den))
}

/// `E^{n|N-n}_GM(|D^d_N,k>)` exactly.
pub fn gm_dicke_qudit_cut_exact(kvec: &CompositionVector, n: usize) -> Result<SmallRational> {
    Ok(SmallRational::one() - dicke_qudit_cut_overlap(kvec, n)?)
}

pub fn gm_dicke_qudit_cut(kvec: &CompositionVector, n: usize) -> Result<f64> {
    Ok(small_to_f64(&gm_dicke_qudit_cut_exact(kvec, n)?))
}

/// Largest biproduct overlap `max_n max_pi ...`; the GGM is one minus this.
pub fn dicke_qudit_max_overlap(kvec: &CompositionVector) -> Result<SmallRational> {
    let total = kvec.n_particles();
    if total < 2 {
        return Err(Error::param("GGM needs N >= 2"));
    }
    let mut best = SmallRational::new(0, 1);
    for n in 1..=total / 2 {
        let q = dicke_qudit_cut_overlap(kvec, n)?;
        if q > best {
            best = q;
        }
    }
    Ok(best)
}

pub fn ggm_dicke_qudit_exact(kvec: &CompositionVector) -> Result<SmallRational> {
    Ok(SmallRational::one() - dicke_qudit_max_overlap(kvec)?)
}

pub fn ggm_dicke_qudit(kvec: &CompositionVector) -> Result<f64> {
    Ok(small_to_f64(&ggm_dicke_qudit_exact(kvec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(v: &[usize]) -> CompositionVector {
        CompositionVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn qubit_dicke_values() {
        assert_eq!(gm_dicke_qubit_exact(3, 1).unwrap(), BigRational::new(5.into(), 9.into()));
        assert_eq!(gm_dicke_qubit_exact(4, 2).unwrap(), BigRational::new(5.into(), 8.into()));
        assert_eq!(gm_dicke_qubit_exact(4, 1).unwrap(), BigRational::new(37.into(), 64.into()));
        for n in 1..30 {
            assert_eq!(gm_dicke_qubit_closed(n, 0).unwrap(), 0.0);
            for k in 0..=n {
                assert_eq!(gm_dicke_qubit_exact(n, k).unwrap(), gm_dicke_qubit_exact(n, n - k).unwrap());
            }
        }
        assert!(gm_dicke_qubit_exact(3, 4).is_err());
    }

    #[test]
    fn qudit_dicke_cut_values() {
        assert_eq!(gm_dicke_qudit_cut_exact(&kv(&[2, 1]), 1).unwrap(), Ratio::new(1, 3));
        assert_eq!(gm_dicke_qudit_cut_exact(&kv(&[5, 0, 0]), 2).unwrap(), Ratio::new(0, 1));
        for n in 2..9 {
            let all_ones = kv(&vec![1; n]);
            for cut in 1..=n / 2 {
                let expected = 1.0 - 1.0 / binomial(n as u64, cut as u64).unwrap() as f64;
                assert!((gm_dicke_qudit_cut(&all_ones, cut).unwrap() - expected).abs() < 1e-15);
            }
            assert_eq!(ggm_dicke_qudit_exact(&all_ones).unwrap(), Ratio::new(n as u128 - 1, n as u128));
        }
        assert!(gm_dicke_qudit_cut(&kv(&[2, 1]), 2).is_err());
        assert!(gm_dicke_qudit_cut(&kv(&[2, 1]), 0).is_err());
    }

    #[test]
    fn qudit_dicke_ggm() {
        assert_eq!(ggm_dicke_qudit_exact(&kv(&[2, 1])).unwrap(), Ratio::new(1, 3));
        assert_eq!(ggm_dicke_qudit_exact(&kv(&[1, 1, 1])).unwrap(), Ratio::new(2, 3));
        assert_eq!(ggm_dicke_qudit_exact(&kv(&[4, 0, 0])).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn knapsack_matches_enumeration() {
        use crate::combinatorics::{bounded_compositions, compositions};
        for (n, d) in [(4, 3), (5, 4), (6, 3), (7, 2)] {
            for counts in compositions(n, d) {
                let k = kv(&counts);
                for cut in 1..=n / 2 {
                    let brute = bounded_compositions(cut, &counts)
                        .into_iter()
                        .map(|pi| counts.iter().zip(&pi).map(|(&a, &b)| binomial(a as u64, b as u64).unwrap()).product::<u128>())
                        .max()
                        .unwrap();
                    let den = binomial(n as u64, cut as u64).unwrap();
                    assert_eq!(dicke_qudit_cut_overlap(&k, cut).unwrap(), Ratio::new(brute, den));
                }
            }
        }
    }
}
