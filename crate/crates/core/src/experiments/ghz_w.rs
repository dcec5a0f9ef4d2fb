//! `span{GHZ_N, W_N}`: bound `1/2 - ((N-1)/N)^(N-1)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::SweepResult;
use crate::error::{Error, Result};

pub fn ghz_w_bound(n: u64) -> f64 {
    let nf = n as f64;
    0.5 - ((nf - 1.0) * (-1.0 / nf).ln_1p()).exp()
}

pub fn ghz_w_bound_exact(n: u64) -> BigRational {
    let num = num_traits::pow(BigInt::from(n - 1), (n - 1) as usize);
    let den = num_traits::pow(BigInt::from(n), (n - 1) as usize);
    BigRational::new(1.into(), 2.into()) - BigRational::new(num, den)
}

pub fn ghz_w_family(ns: impl IntoIterator<Item = u64>) -> Result<SweepResult> {
    let mut sweep = SweepResult::new("ghz_w", &["N", "bound", "positive"], 1);
    for n in ns {
        if n < 3 {
            return Err(Error::param(format!("need N >= 3, got {n}")));
        }
        let b = ghz_w_bound(n);
        sweep.push(vec![n.into(), b.into(), (b > 0.0).into()]);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::subspace_bound;
    use crate::measures::gm_dicke_qubit_closed;

    #[test]
    fn values() {
        assert_eq!(ghz_w_bound_exact(3), BigRational::new(1.into(), 18.into()));
        assert!((ghz_w_bound(3) - 1.0 / 18.0).abs() < 1e-15);
        assert!((ghz_w_bound(1_000_000) - (0.5 - (-1f64).exp())).abs() < 1e-6);
        for n in 3..40 {
            let via_criterion = subspace_bound(&[0.5, gm_dicke_qubit_closed(n, 1).unwrap()]);
            assert!((via_criterion - ghz_w_bound(n)).abs() < 1e-14, "N={n}");
        }
        let s = ghz_w_family(3..=10_000).unwrap();
        assert!(s.column("positive").unwrap().iter().all(|c| c.as_bool() == Some(true)));
    }
}
