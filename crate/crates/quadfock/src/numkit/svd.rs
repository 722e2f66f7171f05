//! Singular value decomposition by one-sided Jacobi.
//!
//! One-sided Jacobi orthogonalizes the columns of A by unitary plane
//! rotations applied from the right. It is slower than bidiagonalization but
//! computes small singular values to high relative accuracy, which the rank
//! and kernel decisions downstream depend on.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::cmatrix::{vec_norm, CMatrix};
use crate::error::Error;
use crate::Result;

#[derive(Debug)]
pub struct Svd {
    /// Left singular vectors, m×n with orthonormal columns (thin form).
    pub u: CMatrix,
    /// Singular values, descending.
    pub sigma: Vec<f64>,
    /// Right singular vectors, n×n unitary.
    pub v: CMatrix,
}

const MAX_SWEEPS: usize = 60;

pub fn svd(a: &CMatrix) -> Result<Svd> {
    a.require_finite()?;
    if a.rows() < a.cols() {
        let t = svd(&a.adjoint())?;
        return Ok(Svd { u: t.v, sigma: t.sigma, v: t.u });
    }
    let m = a.rows();
    let n = a.cols();
    let mut w = a.clone();
    let mut v = CMatrix::identity(n);
    if n == 0 {
        return Ok(Svd { u: w, sigma: vec![], v });
    }

    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    app += wip.norm_sqr();
                    aqq += wiq.norm_sqr();
                    apq += wip.conj() * wiq;
                }
                let abs_apq = apq.norm();
                if abs_apq <= f64::EPSILON * (app * aqq).sqrt() || abs_apq == 0.0 {
                    continue;
                }
                rotated = true;
                let u_phase = apq / abs_apq;
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = u_phase * (t * c);
                for i in 0..m {
                    let wip = w[(i, p)];
                    let wiq = w[(i, q)];
                    w[(i, p)] = wip * c - wiq * s.conj();
                    w[(i, q)] = wip * s + wiq * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s.conj();
                    v[(i, q)] = vip * s + viq * c;
                }
            }
        }
        if !rotated {
            let mut sigma: Vec<f64> = (0..n).map(|j| vec_norm(&w.column(j))).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
            let v_sorted = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
            let mut u = CMatrix::zeros(m, n);
            let mut sig_sorted = vec![0.0; n];
            for (jj, &o) in order.iter().enumerate() {
                sig_sorted[jj] = sigma[o];
                let col = w.column(o);
                if sigma[o] > 0.0 {
                    for i in 0..m {
                        u[(i, jj)] = col[i] / sigma[o];
                    }
                }
                // zero columns keep a zero left vector; callers relying on U
                // only use columns with sigma above their rank tolerance
            }
            sigma = sig_sorted;
            return Ok(Svd { u, sigma, v: v_sorted });
        }
    }
    Err(Error::NoConvergence("one-sided Jacobi SVD"))
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    match svd(a) {
        Ok(s) => s.sigma.first().copied().unwrap_or(0.0),
        Err(_) => f64::NAN,
    }
}

/// Number of singular values above `rel_tol · σ_max`.
pub fn rank(a: &CMatrix, rel_tol: f64) -> Result<usize> {
    let s = svd(a)?;
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.sigma.iter().filter(|&&x| x > rel_tol * smax).count())
}

/// Orthonormal basis of the numerical kernel (right singular vectors whose
/// singular values fall at or below `rel_tol · σ_max`).
pub fn nullspace(a: &CMatrix, rel_tol: f64) -> Result<CMatrix> {
    let s = svd(a)?;
    let n = a.cols();
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let keep: Vec<usize> = (0..n)
        .filter(|&j| smax == 0.0 || s.sigma[j] <= rel_tol * smax)
        .collect();
    Ok(CMatrix::from_fn(n, keep.len(), |i, j| s.v[(i, keep[j])]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn svd_reconstructs() {
        let a = CMatrix::from_rows(
            3,
            2,
            &[
                c(1.0, 0.5),
                c(-0.3, 0.2),
                c(0.0, 2.0),
                c(1.0, -1.0),
                c(0.7, 0.0),
                c(0.1, 0.9),
            ],
        )
        .unwrap();
        let s = svd(&a).unwrap();
        let d = CMatrix::diag(&s.sigma.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        let rec = &(&s.u * &d) * &s.v.adjoint();
        assert!((&rec - &a).max_abs() < 1e-12);
        // orthonormal right vectors
        let vv = &s.v.adjoint() * &s.v;
        assert!((&vv - &CMatrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn rank_and_nullspace() {
        // rank-1 matrix
        let a = CMatrix::from_rows(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert_eq!(rank(&a, 1e-10).unwrap(), 1);
        let ns = nullspace(&a, 1e-10).unwrap();
        assert_eq!(ns.cols(), 1);
        let img = a.matvec(&ns.column(0));
        assert!(vec_norm(&img) < 1e-12);
    }

    #[test]
    fn wide_matrix() {
        let a = CMatrix::from_rows(1, 3, &[c(3.0, 0.0), c(0.0, 4.0), c(0.0, 0.0)]).unwrap();
        let s = svd(&a).unwrap();
        assert!((s.sigma[0] - 5.0).abs() < 1e-12);
    }
}
