//! Takagi factorization of complex symmetric matrices: S = U diag(σ) Uᵀ with
//! U unitary and σ the singular values of S.
//!
//! The positive part is obtained from the real symmetric doubling
//! T = [[X, Y], [Y, -X]] for S = X + iY: the con-eigenvectors S w̄ = σ w
//! correspond to eigenvectors (u, v) of T with eigenvalue σ (w = u + iv),
//! and ±σ pairs mirror each other. The kernel part is taken directly as the
//! conjugate of the nullspace of S.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::cmatrix::{vec_dot, vec_norm, CMatrix};
use super::realsym::RealSymmetric;
use super::svd;
use crate::error::Error;
use crate::Result;

#[derive(Debug)]
pub struct Takagi {
    pub unitary: CMatrix,
    /// Descending; the singular values of the input.
    pub sigma: Vec<f64>,
}

pub fn takagi(sym: &CMatrix) -> Result<Takagi> {
    let n = sym.require_square()?;
    sym.require_finite()?;
    if !sym.is_symmetric(1e-12) {
        return Err(Error::NotSymmetric);
    }
    if n == 0 {
        return Ok(Takagi { unitary: CMatrix::identity(0), sigma: Vec::new() });
    }

    let sv = svd::svd(sym)?;
    let smax = sv.sigma.first().copied().unwrap_or(0.0);
    let zero_tol = if smax == 0.0 { 0.0 } else { 1e-13 * smax };
    let pos_count = sv.sigma.iter().filter(|&&s| s > zero_tol).count();

    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut sigma: Vec<f64> = Vec::with_capacity(n);

    if pos_count > 0 {
        let doubled = RealSymmetric::from_fn(2 * n, |i, j| {
            // [[X, Y], [Y, -X]] for S = X + iY
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            let z = sym[(ii, jj)];
            match (bi, bj) {
                (0, 0) => z.re,
                (0, 1) | (1, 0) => z.im,
                _ => -z.re,
            }
        });
        let (vals, vecs) = doubled.eigen()?;
        // take the pos_count largest eigenvalues (descending)
        for k in 0..pos_count {
            let col = 2 * n - 1 - k;
            let s = vals[col];
            let w: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(vecs[i * 2 * n + col], vecs[(n + i) * 2 * n + col]))
                .collect();
            let norm = vec_norm(&w);
            if norm == 0.0 {
                return Err(Error::NoConvergence("Takagi positive part"));
            }
            columns.push(w.iter().map(|z| z / norm).collect());
            sigma.push(s);
        }
    }

    if pos_count < n {
        // kernel part: S w̄ = 0, i.e. w in the conjugate of ker S
        let ker = svd::nullspace(sym, 1e-13)?;
        let needed = n - pos_count;
        let mut taken = 0usize;
        for j in 0..ker.cols() {
            if taken == needed {
                break;
            }
            let mut w: Vec<Complex64> = ker.column(j).iter().map(|z| z.conj()).collect();
            // orthogonalize against everything accepted so far
            for c in &columns {
                let d = vec_dot(&w, c);
                for (wi, ci) in w.iter_mut().zip(c) {
                    *wi -= d * ci;
                }
            }
            let norm = vec_norm(&w);
            if norm > 1e-8 {
                columns.push(w.iter().map(|z| z / norm).collect());
                sigma.push(0.0);
                taken += 1;
            }
        }
        if taken != needed {
            return Err(Error::NoConvergence("Takagi kernel completion"));
        }
    }

    let mut unitary = CMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        unitary.set_column(j, col);
    }
    Ok(Takagi { unitary, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check(sym: &CMatrix) {
        let n = sym.rows();
        let t = takagi(sym).unwrap();
        let uu = &t.unitary.adjoint() * &t.unitary;
        assert!((&uu - &CMatrix::identity(n)).max_abs() < 1e-10, "U not unitary");
        let d = CMatrix::diag(&t.sigma.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        let rec = &(&t.unitary * &d) * &t.unitary.transpose();
        assert!(
            (&rec - sym).max_abs() <= 1e-10 * (1.0 + sym.max_abs()),
            "U diag(sigma) U^T != S, defect {}",
            (&rec - sym).max_abs()
        );
        // sigma must match the singular values
        let sv = svd::svd(sym).unwrap();
        for (a, b) in t.sigma.iter().zip(&sv.sigma) {
            assert!((a - b).abs() < 1e-10 * (1.0 + sym.max_abs()));
        }
    }

    #[test]
    fn zero_matrix() {
        let z = CMatrix::zeros(3, 3);
        let t = takagi(&z).unwrap();
        assert!(t.sigma.iter().all(|&s| s == 0.0));
        check(&z);
    }

    #[test]
    fn real_diagonal() {
        let d = CMatrix::diag(&[c(2.0, 0.0), c(5.0, 0.0)]);
        let t = takagi(&d).unwrap();
        assert!((t.sigma[0] - 5.0).abs() < 1e-12);
        assert!((t.sigma[1] - 2.0).abs() < 1e-12);
        check(&d);
    }

    #[test]
    fn complex_symmetric_random() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        for _ in 0..5 {
            let raw = CMatrix::from_fn(3, 3, |_, _| c(next(), next()));
            let sym = &raw + &raw.transpose();
            check(&sym);
        }
    }

    #[test]
    fn rank_deficient_symmetric() {
        // rank-1 complex symmetric: v vᵀ
        let v = [c(1.0, 0.5), c(-0.3, 1.0), c(0.0, -0.7)];
        let s = CMatrix::from_fn(3, 3, |i, j| v[i] * v[j]);
        check(&s);
        let t = takagi(&s).unwrap();
        assert!(t.sigma[1] < 1e-12);
    }

    #[test]
    fn rejects_nonsymmetric() {
        let a = CMatrix::from_rows(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(takagi(&a).unwrap_err(), Error::NotSymmetric);
    }
}
