//! Hermitian eigendecomposition by cyclic complex Jacobi rotations, and the
//! positive definite Hermitian square root built on it.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::cmatrix::CMatrix;
use crate::error::Error;
use crate::Result;

/// Eigendecomposition a = V diag(values) V^† of a Hermitian matrix.
/// Eigenvalues ascending; V unitary with eigenvectors as columns.
#[derive(Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi for Hermitian matrices. The input is symmetrized as
/// (a + a^†)/2; callers that need strict input validation check the
/// Hermitian defect themselves.
pub fn hermitian_eigen(a: &CMatrix) -> Result<HermitianEigen> {
    let n = a.require_square()?;
    a.require_finite()?;
    // work on the Hermitian average to keep the iteration stable
    let mut m = CMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = CMatrix::identity(n);
    if n <= 1 {
        return Ok(HermitianEigen {
            values: (0..n).map(|i| m[(i, i)].re).collect(),
            vectors: v,
        });
    }
    let scale = m.max_abs().max(1e-300);
    let stop = f64::EPSILON * scale;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(m[(p, q)].norm());
            }
        }
        if off <= stop {
            let mut values: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
            // ascending sort, permuting eigenvector columns along
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
            let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
            let mut sorted = vec![0.0; n];
            for (j, &o) in order.iter().enumerate() {
                sorted[j] = values[o];
            }
            values = sorted;
            return Ok(HermitianEigen { values, vectors });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let abs_apq = apq.norm();
                if abs_apq <= stop * 1e-2 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // phase so that the problem reduces to a real 2x2 rotation
                let u = apq / abs_apq;
                let tau = (aqq - app) / (2.0 * abs_apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = u * (t * c);
                // rows/cols p,q of m: m <- J^† m J with J = [[c, s],[-s̄, c]] acting on (p,q)
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c - mkq * s.conj();
                    m[(k, q)] = mkp * s + mkq * c;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c - mqk * s;
                    m[(q, k)] = mpk * s.conj() + mqk * c;
                }
                // keep the diagonal real and the pivot numerically annihilated
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * s.conj();
                    v[(k, q)] = vkp * s + vkq * c;
                }
            }
        }
    }
    Err(Error::NoConvergence("Hermitian Jacobi eigendecomposition"))
}

/// Unique positive definite Hermitian square root of a Hermitian positive
/// definite matrix. Eigenvalues below `-tol·λ_max` are rejected with the
/// offending value; small negative ripple within the tolerance is clamped.
pub fn herm_sqrt(p: &CMatrix) -> Result<CMatrix> {
    let n = p.require_square()?;
    if !p.is_hermitian(1e-10) {
        return Err(Error::NotHermitian);
    }
    let eig = hermitian_eigen(p)?;
    let lam_max = eig.values.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let tol = 1e-10 * lam_max.max(1e-300);
    let mut roots = vec![0.0; n];
    for (i, &lam) in eig.values.iter().enumerate() {
        if lam < -tol {
            return Err(Error::NotPositiveDefinite { eigenvalue: lam });
        }
        roots[i] = lam.max(0.0).sqrt();
    }
    let v = &eig.vectors;
    let mut out = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += v[(i, k)] * roots[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eigen_of_known_hermitian() {
        // [[2, i],[-i, 2]] has eigenvalues 1 and 3
        let a = CMatrix::from_rows(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-12);
        assert!((e.values[1] - 3.0).abs() < 1e-12);
        // reconstruction
        let v = &e.vectors;
        let d = CMatrix::diag(&[c(e.values[0], 0.0), c(e.values[1], 0.0)]);
        let rec = &(v * &d) * &v.adjoint();
        assert!((&rec - &a).max_abs() < 1e-12);
    }

    #[test]
    fn sqrt_of_diag() {
        let a = CMatrix::diag(&[c(4.0, 0.0), c(9.0, 0.0)]);
        let r = herm_sqrt(&a).unwrap();
        assert!((r[(0, 0)] - c(2.0, 0.0)).norm() < 1e-12);
        assert!((r[(1, 1)] - c(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sqrt_rejects_indefinite() {
        let a = CMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        match herm_sqrt(&a) {
            Err(Error::NotPositiveDefinite { eigenvalue }) => assert!(eigenvalue < 0.0),
            other => panic!("expected NotPositiveDefinite, got {other:?}"),
        }
    }
}
