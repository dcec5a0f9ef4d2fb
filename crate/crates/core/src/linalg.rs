//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

/// Eigen-decomposition of a Hermitian matrix, eigenpairs sorted by descending eigenvalue.
pub(crate) fn hermitian_eigen(m: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Top eigenpair of `U U^dagger` for the column set `U` (dim x k).
///
/// Goes through the k x k Gram matrix when k is the smaller side. Returns
/// `None` when every column vanishes.
pub(crate) fn dominant_direction(u: &DMatrix<Complex64>) -> Option<(f64, DVector<Complex64>)> {
    let (dim, k) = u.shape();
    if dim == 0 || k == 0 {
        return None;
    }
    let mut v: DVector<Complex64> = if k == 1 {
        u.column(0).into_owned()
    } else if k < dim {
        let gram = u.adjoint() * u;
        let (_, vecs) = hermitian_eigen(gram);
        u * vecs.column(0)
    } else {
        let outer = u * u.adjoint();
        let (_, vecs) = hermitian_eigen(outer);
        vecs.column(0).into_owned()
    };
    let norm = v.norm();
    if norm < 1e-150 {
        return None;
    }
    v /= Complex64::new(norm, 0.0);
    // Rayleigh quotient recomputed directly: sum_i |<v|u_i>|^2.
    let value = (u.adjoint() * &v).norm_squared();
    Some((value, v))
}

/// Squared singular values, descending, via the Gram matrix on the smaller side.
pub(crate) fn squared_singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let gram = if m.nrows() <= m.ncols() { m * m.adjoint() } else { m.adjoint() * m };
    let (values, _) = hermitian_eigen(gram);
    values.into_iter().map(|v| v.max(0.0)).collect()
}

/// Thin SVD with singular values sorted descending: `(U, sigma, V)` with `m = U diag(sigma) V^dagger`.
pub(crate) fn sorted_svd(m: &DMatrix<Complex64>) -> (DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>) {
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v = svd.v_t.expect("requested V^T").adjoint();
    let k = svd.singular_values.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u_sorted = DMatrix::from_fn(u.nrows(), k, |r, c| u[(r, order[c])]);
    let v_sorted = DMatrix::from_fn(v.nrows(), k, |r, c| v[(r, order[c])]);
    (u_sorted, sigma, v_sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_direction_matches_both_routes() {
        let u = DMatrix::from_fn(5, 2, |r, c| Complex64::new((r + 2 * c) as f64, (r * c) as f64 - 1.0));
        let (val, v) = dominant_direction(&u).unwrap();
        let (vals, _) = hermitian_eigen(&u * u.adjoint());
        assert!((val - vals[0]).abs() < 1e-10 * vals[0]);
        let residual = (&u * u.adjoint()) * &v - v.clone() * Complex64::new(val, 0.0);
        assert!(residual.norm() < 1e-9 * val);
        assert!(dominant_direction(&DMatrix::zeros(3, 2)).is_none());
    }

    #[test]
    fn gram_and_svd_agree() {
        let m = DMatrix::from_fn(3, 7, |r, c| Complex64::new((r as f64 - c as f64).sin(), (r * c) as f64 * 0.1));
        let (_, s, _) = sorted_svd(&m);
        let sq = squared_singular_values(&m);
        for (a, b) in s.iter().zip(&sq) {
            assert!((a * a - b).abs() < 1e-12);
        }
    }
}
