//! LU factorization with partial pivoting for dense complex matrices.

#[allow(unused_imports)]
use alloc::vec;
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Zero;

use super::cmatrix::CMatrix;
use crate::error::Error;
use crate::Result;

pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
    sign_flips: usize,
}

impl Lu {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.require_square()?;
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign_flips = 0;
        for k in 0..n {
            let mut pivot = k;
            let mut best = lu[(k, k)].norm();
            for i in k + 1..n {
                let v = lu[(i, k)].norm();
                if v > best {
                    best = v;
                    pivot = i;
                }
            }
            if best == 0.0 {
                return Err(Error::Singular);
            }
            if pivot != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot, j)];
                    lu[(pivot, j)] = t;
                }
                perm.swap(k, pivot);
                sign_flips += 1;
            }
            let d = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / d;
                lu[(i, k)] = f;
                if f.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let s = lu[(k, j)];
                    lu[(i, j)] -= f * s;
                }
            }
        }
        Ok(Lu { lu, perm, sign_flips })
    }

    pub fn det(&self) -> Complex64 {
        let n = self.lu.rows();
        let mut d = if self.sign_flips % 2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(-1.0, 0.0)
        };
        for i in 0..n {
            d *= self.lu[(i, i)];
        }
        d
    }

    pub fn solve_vec(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.lu.rows();
        let mut x = vec![Complex64::zero(); n];
        for i in 0..n {
            x[i] = b[self.perm[i]];
        }
        for i in 0..n {
            for j in 0..i {
                let f = self.lu[(i, j)] * x[j];
                x[i] -= f;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let f = self.lu[(i, j)] * x[j];
                x[i] -= f;
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.column(j));
            out.set_column(j, &col);
        }
        out
    }

    pub fn inverse(&self) -> CMatrix {
        self.solve(&CMatrix::identity(self.lu.rows()))
    }
}

/// Solve a x = b for square a.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    Ok(Lu::new(a)?.solve(b))
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    Ok(Lu::new(a)?.inverse())
}

pub fn det(a: &CMatrix) -> Result<Complex64> {
    Ok(Lu::new(a)?.det())
}

/// Least-squares solution of the overdetermined system a x = b via normal
/// equations with Tikhonov-free Cholesky-style LU; a is m×n with m ≥ n and
/// full column rank. Returns (solution, residual Frobenius norm).
pub fn lstsq(a: &CMatrix, b: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let at = a.adjoint();
    let ata = &at * a;
    let bvec = CMatrix::from_fn(a.rows(), 1, |i, _| b[i]);
    let atb = &at * &bvec;
    let x = Lu::new(&ata)?.solve(&atb);
    let sol = x.column(0);
    let fit = a.matvec(&sol);
    let resid = fit
        .iter()
        .zip(b)
        .map(|(f, g)| (f - g).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok((sol, resid))
}
