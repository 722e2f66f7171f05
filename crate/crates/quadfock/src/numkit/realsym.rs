//! Real symmetric quadratic-form storage, Jacobi eigensolver, and the
//! tolerance-aware positive-semidefiniteness classifier.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::Result;

/// Real symmetric matrix; only the upper triangle is stored, so symmetry is
/// exact by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct RealSymmetric {
    dim: usize,
    /// Upper triangle, row by row: (0,0), (0,1), ..., (0,n-1), (1,1), ...
    upper: Vec<f64>,
}

/// Verdict of [`psd_classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsdClass {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl RealSymmetric {
    pub fn zeros(dim: usize) -> Self {
        RealSymmetric { dim, upper: vec![0.0; dim * (dim + 1) / 2] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            s.set(i, i, 1.0);
        }
        s
    }

    /// Builds from any square array of entries by symmetrizing (a+aᵀ)/2.
    pub fn from_dense(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::ShapeMismatch { expected: (dim, dim), got: (entries.len(), 1) });
        }
        if !entries.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                s.set(i, j, 0.5 * (entries[i * dim + j] + entries[j * dim + i]));
            }
        }
        Ok(s)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut s = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        r * self.dim - r * (r + 1) / 2 + c
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.upper[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.upper[k] = v;
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.get(i, j);
            }
        }
        out
    }

    /// Quadratic form value vᵀ S v.
    pub fn quad(&self, v: &[f64]) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            let mut row = 0.0;
            for j in 0..n {
                row += self.get(i, j) * v[j];
            }
            acc += v[i] * row;
        }
        acc
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.upper.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// Eigenvalues ascending and orthonormal eigenvectors (columns of a flat
    /// row-major n×n array), by cyclic Jacobi.
    pub fn eigen(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        jacobi_eigen(self.dim, self.to_dense())
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigen()?.0)
    }

    /// Spectral norm (largest |eigenvalue|).
    pub fn spectral_norm(&self) -> Result<f64> {
        let ev = self.eigenvalues()?;
        Ok(ev.iter().fold(0.0f64, |m, &x| m.max(x.abs())))
    }
}

/// Classify a real symmetric form against `rel_tol` times its spectral norm:
/// positive definite when λ_min exceeds the tie band, indefinite when λ_min
/// falls below it, positive semidefinite inside the band. The zero matrix is
/// PSD. Ties report PSD so that "bounded" verdicts are conservative at
/// transition times.
pub fn psd_classify(s: &RealSymmetric, rel_tol: f64) -> Result<PsdClass> {
    if rel_tol <= 0.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "rel_tol must be positive, got {rel_tol:e}"
        )));
    }
    let ev = s.eigenvalues()?;
    let norm = ev.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if norm == 0.0 {
        return Ok(PsdClass::PositiveSemidefinite);
    }
    let lam_min = ev[0];
    let band = rel_tol * norm;
    Ok(if lam_min > band {
        PsdClass::PositiveDefinite
    } else if lam_min < -band {
        PsdClass::Indefinite
    } else {
        PsdClass::PositiveSemidefinite
    })
}

/// Most-negative eigenpair, for unboundedness witnesses.
pub fn min_eigenpair(s: &RealSymmetric) -> Result<(f64, Vec<f64>)> {
    let (vals, vecs) = s.eigen()?;
    let n = s.dim;
    let v = (0..n).map(|i| vecs[i * n]).collect();
    Ok((vals[0], v))
}

const MAX_SWEEPS: usize = 64;

fn jacobi_eigen(n: usize, mut a: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    if n <= 1 {
        return Ok(((0..n).map(|i| a[i * n + i]).collect(), v));
    }
    let scale = a.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
    let stop = f64::EPSILON * scale;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(a[p * n + q].abs());
            }
        }
        if off <= stop {
            let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
            let mut vec_sorted = vec![0.0; n * n];
            for (jj, &o) in order.iter().enumerate() {
                for i in 0..n {
                    vec_sorted[i * n + jj] = v[i * n + o];
                }
            }
            let mut val_sorted = vec![0.0; n];
            for (jj, &o) in order.iter().enumerate() {
                val_sorted[jj] = values[o];
            }
            values = val_sorted;
            return Ok((values, vec_sorted));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= stop * 1e-2 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * s;
                    a[k * n + q] = akp * s + akq * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * s;
                    a[q * n + k] = apk * s + aqk * c;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * s;
                    v[k * n + q] = vkp * s + vkq * c;
                }
            }
        }
    }
    Err(Error::NoConvergence("real symmetric Jacobi eigendecomposition"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_basics() {
        assert_eq!(psd_classify(&RealSymmetric::identity(3), 1e-10).unwrap(), PsdClass::PositiveDefinite);
        let mut d = RealSymmetric::zeros(2);
        d.set(0, 0, 1.0);
        assert_eq!(psd_classify(&d, 1e-10).unwrap(), PsdClass::PositiveSemidefinite);
        d.set(1, 1, -1.0);
        assert_eq!(psd_classify(&d, 1e-10).unwrap(), PsdClass::Indefinite);
        assert_eq!(
            psd_classify(&RealSymmetric::zeros(2), 1e-10).unwrap(),
            PsdClass::PositiveSemidefinite
        );
    }

    #[test]
    fn eigen_2x2() {
        let s = RealSymmetric::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (vals, _) = s.eigen().unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-13);
        assert!((vals[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn quad_matches_dense() {
        let s = RealSymmetric::from_fn(3, |i, j| (i + 2 * j) as f64);
        let v = [0.3, -1.2, 0.7];
        let d = s.to_dense();
        let mut direct = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                direct += v[i] * d[i * 3 + j] * v[j];
            }
        }
        assert!((s.quad(&v) - direct).abs() < 1e-14);
    }
}
