//! Dense complex matrices in row-major order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::Error;
use crate::Result;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex64::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from a row-major slice of entries.
    pub fn from_rows(rows: usize, cols: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch { expected: (rows, cols), got: (entries.len(), 1) });
        }
        Ok(CMatrix { rows, cols, data: entries.to_vec() })
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch { expected: (rows, cols), got: (entries.len(), 1) });
        }
        Ok(CMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = entries[i];
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, a: Complex64) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * a).collect() }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for i in 0..self.rows {
            self[(i, j)] = col[i];
        }
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn columns(&self, lo: usize, hi: usize) -> CMatrix {
        CMatrix::from_fn(self.rows, hi - lo, |i, j| self[(i, lo + j)])
    }

    /// Sub-block with the given row and column index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> CMatrix {
        CMatrix::from_fn(row_idx.len(), col_idx.len(), |i, j| self[(row_idx[i], col_idx[j])])
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.rows, other.rows);
        CMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(self.cols, v.len());
        let mut out = vec![Complex64::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::zero();
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.cols {
            let s: f64 = (0..self.rows).map(|i| self[(i, j)].norm()).sum();
            best = best.max(s);
        }
        best
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, z| m.max(z.norm()))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// ‖A − A^†‖_max, zero for Hermitian matrices.
    pub fn hermitian_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        d
    }

    /// ‖A − Aᵀ‖_max, zero for complex symmetric matrices.
    pub fn symmetry_defect(&self) -> f64 {
        let mut d = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                d = d.max((self[(i, j)] - self[(j, i)]).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermitian_defect() <= tol * (1.0 + self.max_abs())
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square() && self.symmetry_defect() <= tol * (1.0 + self.max_abs())
    }

    /// Entrywise real part as a new matrix (imaginary parts dropped).
    pub fn real_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| Complex64::new(self[(i, j)].re, 0.0))
    }

    /// Entrywise imaginary part as a new matrix.
    pub fn imag_part(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| Complex64::new(self[(i, j)].im, 0.0))
    }

    /// Largest entrywise imaginary magnitude.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, z| m.max(z.im.abs()))
    }

    /// Real 2n×2n representation of the complex-linear action on (Re z, Im z).
    pub fn real_representation(&self) -> CMatrix {
        let n = self.rows;
        debug_assert_eq!(self.rows, self.cols);
        CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let z = self[(i % n, j % n)];
            let v = match (i < n, j < n) {
                (true, true) => z.re,
                (true, false) => -z.im,
                (false, true) => z.im,
                (false, false) => z.re,
            };
            Complex64::new(v, 0.0)
        })
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

// ── complex vector helpers ──────────────────────────────────────────

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian inner product ⟨u, v⟩ = Σ u_j conj(v_j).
pub fn vec_dot(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Bilinear product u·v = Σ u_j v_j (no conjugation).
pub fn vec_bilinear(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

pub fn vec_scale(v: &[Complex64], a: Complex64) -> Vec<Complex64> {
    v.iter().map(|z| z * a).collect()
}

pub fn vec_sub(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Split a complex n-vector into the real 2n-vector (Re z, Im z).
pub fn to_real_pair(z: &[Complex64]) -> Vec<f64> {
    let n = z.len();
    let mut v = vec![0.0; 2 * n];
    for j in 0..n {
        v[j] = z[j].re;
        v[n + j] = z[j].im;
    }
    v
}

/// Inverse of [`to_real_pair`].
pub fn from_real_pair(v: &[f64]) -> Vec<Complex64> {
    let n = v.len() / 2;
    (0..n).map(|j| Complex64::new(v[j], v[n + j])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_and_adjoint() {
        let a = CMatrix::from_rows(2, 2, &[c(1.0, 1.0), c(0.0, 2.0), c(3.0, 0.0), c(1.0, -1.0)]).unwrap();
        let prod = &a * &CMatrix::identity(2);
        assert_eq!(prod, a);
        let aa = a.adjoint();
        assert_eq!(aa[(0, 1)], c(3.0, 0.0));
        assert_eq!(aa[(1, 0)], c(0.0, -2.0));
    }

    #[test]
    fn real_representation_matches_complex_action() {
        let m = CMatrix::from_rows(2, 2, &[c(0.3, -1.1), c(0.2, 0.5), c(-0.7, 0.0), c(1.0, 2.0)]).unwrap();
        let r = m.real_representation();
        let z = [c(0.4, -0.3), c(-1.2, 0.9)];
        let mz = m.matvec(&z);
        let v = to_real_pair(&z);
        let vc: Vec<Complex64> = v.iter().map(|&x| c(x, 0.0)).collect();
        let rv = r.matvec(&vc);
        let back = from_real_pair(&rv.iter().map(|z| z.re).collect::<Vec<_>>());
        for j in 0..2 {
            assert!((back[j] - mz[j]).norm() < 1e-14);
        }
    }
}
