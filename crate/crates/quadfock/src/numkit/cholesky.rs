//! Cholesky factorization of Hermitian positive definite matrices.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::cmatrix::CMatrix;
use crate::error::Error;
use crate::Result;

/// Lower triangular l with a = l l^†.
pub fn cholesky(a: &CMatrix) -> Result<CMatrix> {
    let n = a.require_square()?;
    let mut l = CMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { eigenvalue: d });
        }
        let djj = d.sqrt();
        l[(j, j)] = Complex64::new(djj, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                let t = l[(i, k)] * l[(j, k)].conj();
                s -= t;
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves l x = b for lower triangular l.
pub fn forward_substitute(l: &CMatrix, b: &[Complex64]) -> alloc::vec::Vec<Complex64> {
    let n = l.rows();
    let mut x = alloc::vec![Complex64::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solves l^† x = b for lower triangular l.
pub fn adjoint_substitute(l: &CMatrix, b: &[Complex64]) -> alloc::vec::Vec<Complex64> {
    let n = l.rows();
    let mut x = alloc::vec![Complex64::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[(k, i)].conj() * x[k];
        }
        x[i] = s / l[(i, i)].conj();
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn factor_and_solve() {
        let a = CMatrix::from_rows(2, 2, &[c(4.0, 0.0), c(1.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)]).unwrap();
        let l = cholesky(&a).unwrap();
        let rec = &l * &l.adjoint();
        assert!((&rec - &a).max_abs() < 1e-13);
        let b = [c(1.0, 0.0), c(0.0, 2.0)];
        let y = forward_substitute(&l, &b);
        let x = adjoint_substitute(&l, &y);
        let back = a.matvec(&x);
        for i in 0..2 {
            assert!((back[i] - b[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_indefinite() {
        let a = CMatrix::diag(&[c(1.0, 0.0), c(-2.0, 0.0)]);
        assert!(matches!(cholesky(&a), Err(Error::NotPositiveDefinite { .. })));
    }
}
