//! Complex Schur decomposition: Householder reduction to Hessenberg form
//! followed by the shifted QR iteration with Givens rotations, plus
//! eigenvalue reordering for invariant-subspace extraction.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use super::cmatrix::CMatrix;
use crate::error::Error;
use crate::Result;

/// a = q · t · q^† with q unitary and t upper triangular.
pub struct Schur {
    pub q: CMatrix,
    pub t: CMatrix,
}

impl Schur {
    pub fn new(a: &CMatrix) -> Result<Self> {
        let n = a.require_square()?;
        a.require_finite()?;
        let (mut t, mut q) = hessenberg(a);
        qr_iterate(&mut t, &mut q, n)?;
        Ok(Schur { q, t })
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.rows()).map(|i| self.t[(i, i)]).collect()
    }

    /// Reorders the Schur form so that eigenvalues selected by `select`
    /// (indexed by current diagonal position) come first. Returns the number
    /// of selected eigenvalues.
    pub fn reorder(&mut self, select: impl Fn(Complex64) -> bool) -> usize {
        let n = self.t.rows();
        let mut flags: Vec<bool> = (0..n).map(|i| select(self.t[(i, i)])).collect();
        let mut target = 0usize;
        for i in 0..n {
            if flags[i] {
                // bubble position i up to `target` by adjacent swaps
                let mut k = i;
                while k > target {
                    swap_adjacent(&mut self.t, &mut self.q, k - 1);
                    flags.swap(k - 1, k);
                    k -= 1;
                }
                target += 1;
            }
        }
        target
    }

    /// Orthonormal basis (columns) of the invariant subspace for the selected
    /// eigenvalues; reorders the decomposition in place.
    pub fn invariant_subspace(&mut self, select: impl Fn(Complex64) -> bool) -> CMatrix {
        let k = self.reorder(select);
        self.q.columns(0, k)
    }
}

/// Eigenvalues of a general complex matrix (diagonal of the Schur factor).
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(Schur::new(a)?.eigenvalues())
}

fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        // Householder vector annihilating h[k+2.., k]
        let mut x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].is_zero() { Complex64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        x[0] -= alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= vnorm;
        }
        // h <- P h P with P = I - 2 v v^†, v supported on rows k+1..n
        let m = x.len();
        // left: rows k+1..n
        for j in 0..n {
            let mut dot = Complex64::zero();
            for i in 0..m {
                dot += x[i].conj() * h[(k + 1 + i, j)];
            }
            let f = dot * 2.0;
            for i in 0..m {
                let d = x[i] * f;
                h[(k + 1 + i, j)] -= d;
            }
        }
        // right: cols k+1..n
        for i in 0..n {
            let mut dot = Complex64::zero();
            for j in 0..m {
                dot += h[(i, k + 1 + j)] * x[j];
            }
            let f = dot * 2.0;
            for j in 0..m {
                let d = f * x[j].conj();
                h[(i, k + 1 + j)] -= d;
            }
        }
        // accumulate q <- q P
        for i in 0..n {
            let mut dot = Complex64::zero();
            for j in 0..m {
                dot += q[(i, k + 1 + j)] * x[j];
            }
            let f = dot * 2.0;
            for j in 0..m {
                let d = f * x[j].conj();
                q[(i, k + 1 + j)] -= d;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::zero();
        }
        h[(k + 1, k)] = alpha;
    }
    (h, q)
}

/// Givens rotation [[c, s], [-s̄, c]] with real c mapping (f, g) to (r, 0).
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::zero());
    }
    let fn_ = f.norm();
    let r = (fn_ * fn_ + gn * gn).sqrt();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let c = fn_ / r;
    let s = (f / fn_) * (g.conj() / r);
    (c, s)
}

fn qr_iterate(h: &mut CMatrix, q: &mut CMatrix, n: usize) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    let total_max = 40 * n.max(4);
    let mut iters = 0usize;
    let mut hi = n - 1;
    let mut stagnation = 0usize;
    loop {
        // deflate converged subdiagonals from the bottom
        while hi > 0 {
            let small = f64::EPSILON * (h[(hi - 1, hi - 1)].norm() + h[(hi, hi)].norm()).max(f64::MIN_POSITIVE);
            if h[(hi, hi - 1)].norm() <= small {
                h[(hi, hi - 1)] = Complex64::zero();
                hi -= 1;
                stagnation = 0;
            } else {
                break;
            }
        }
        if hi == 0 {
            return Ok(());
        }
        // active block lo..=hi
        let mut lo = hi;
        while lo > 0 {
            let small = f64::EPSILON * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm()).max(f64::MIN_POSITIVE);
            if h[(lo, lo - 1)].norm() <= small {
                h[(lo, lo - 1)] = Complex64::zero();
                break;
            }
            lo -= 1;
        }

        iters += 1;
        stagnation += 1;
        if iters > total_max {
            return Err(Error::NoConvergence("complex QR iteration"));
        }

        // Wilkinson shift from the trailing 2x2, exceptional shift on stagnation
        let mu = if stagnation % 12 == 0 {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            let a = h[(hi - 1, hi - 1)];
            let b = h[(hi - 1, hi)];
            let c = h[(hi, hi - 1)];
            let d = h[(hi, hi)];
            let tr2 = (a + d) * 0.5;
            let det = a * d - b * c;
            let disc = (tr2 * tr2 - det).sqrt();
            let m1 = tr2 + disc;
            let m2 = tr2 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };

        // explicit shifted QR step on the active block:
        // h - mu = Q R via Givens on the subdiagonal, then h <- R Q + mu
        for i in lo..=hi {
            let d = h[(i, i)];
            h[(i, i)] = d - mu;
        }
        let mut rots: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo);
        for i in lo..hi {
            let (c, s) = givens(h[(i, i)], h[(i + 1, i)]);
            rots.push((c, s));
            // rows i, i+1; column i-1 of both rows is already zero
            for j in i..n {
                let hij = h[(i, j)];
                let h1j = h[(i + 1, j)];
                h[(i, j)] = hij * c + h1j * s;
                h[(i + 1, j)] = -hij * s.conj() + h1j * c;
            }
            h[(i + 1, i)] = Complex64::zero();
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let i = lo + idx;
            // right-multiply by the rotation adjoint: columns i, i+1,
            // touching every row with entries there (0..=i+1)
            for r in 0..=i + 1 {
                let hri = h[(r, i)];
                let hr1 = h[(r, i + 1)];
                h[(r, i)] = hri * c + hr1 * s.conj();
                h[(r, i + 1)] = -hri * s + hr1 * c;
            }
            for r in 0..n {
                let qri = q[(r, i)];
                let qr1 = q[(r, i + 1)];
                q[(r, i)] = qri * c + qr1 * s.conj();
                q[(r, i + 1)] = -qri * s + qr1 * c;
            }
        }
        for i in lo..=hi {
            let d = h[(i, i)];
            h[(i, i)] = d + mu;
        }
    }
}

/// Swaps the adjacent diagonal entries t[k][k] and t[k+1][k+1] of an upper
/// triangular t by a unitary similarity, updating q.
fn swap_adjacent(t: &mut CMatrix, q: &mut CMatrix, k: usize) {
    let n = t.rows();
    let l1 = t[(k, k)];
    let t12 = t[(k, k + 1)];
    let l2 = t[(k + 1, k + 1)];
    // eigenvector of [[l1, t12],[0, l2]] for l2 is (t12, l2 - l1)
    let (c, s) = givens(t12, l2 - l1);
    // rows k, k+1
    for j in 0..n {
        let a = t[(k, j)];
        let b = t[(k + 1, j)];
        t[(k, j)] = a * c + b * s;
        t[(k + 1, j)] = -a * s.conj() + b * c;
    }
    // columns k, k+1 (adjoint rotation)
    for i in 0..n {
        let a = t[(i, k)];
        let b = t[(i, k + 1)];
        t[(i, k)] = a * c + b * s.conj();
        t[(i, k + 1)] = -a * s + b * c;
    }
    for i in 0..n {
        let a = q[(i, k)];
        let b = q[(i, k + 1)];
        q[(i, k)] = a * c + b * s.conj();
        q[(i, k + 1)] = -a * s + b * c;
    }
    t[(k + 1, k)] = Complex64::zero();
    // diagonal entries are exchanged up to roundoff; enforce exactly
    t[(k, k)] = l2;
    t[(k + 1, k + 1)] = l1;
}
