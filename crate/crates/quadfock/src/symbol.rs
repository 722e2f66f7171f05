//! Real-side quadratic symbols q(x, ξ) on R^{2n}: the fundamental matrix,
//! the symplectic form, Poisson brackets, the bracket-condition flag, and
//! the averaging index J.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::numkit::{psd_classify, spectral_norm, CMatrix, PsdClass, RealSymmetric};
use crate::Result;

/// An escape index: the number of iterates needed before a semidefinite form
/// sees a direction, or `Infinite` past the Cayley-Hamilton cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeIndex {
    Finite(usize),
    Infinite,
}

impl EscapeIndex {
    pub fn is_finite(&self) -> bool {
        matches!(self, EscapeIndex::Finite(_))
    }
}

/// Complex-valued quadratic form q(x, ξ) = x·qxx·x + 2 x·qxxi·ξ + ξ·qxixi·ξ
/// with qxx, qxixi symmetric.
#[derive(Debug, Clone)]
pub struct QuadraticSymbol {
    n: usize,
    qxx: CMatrix,
    qxxi: CMatrix,
    qxixi: CMatrix,
}

/// The Hamilton map of a quadratic symbol, acting on C^{2n}.
#[derive(Debug, Clone)]
pub struct FundamentalMatrix {
    n: usize,
    f: CMatrix,
}

/// Outcome of the heuristic bracket-condition search on the zero set of q.
///
/// `FlagRaised` certifies (up to the numerical thresholds) a real point where
/// q vanishes and the bracket {Im q, Re q} does not, which forces the
/// spectrum of the quantization to be all of C. `NoWitnessFound` is *not* a
/// proof of the contrary; the search is a heuristic by design.
#[derive(Debug, Clone)]
pub enum BracketFlag {
    FlagRaised {
        /// Unit-norm witness point (x₀, ξ₀) in R^{2n}.
        witness: Vec<f64>,
        /// |q| at the witness (≤ the zero threshold).
        symbol_value: f64,
        /// {Im q, Re q} at the witness.
        bracket_value: f64,
    },
    NoWitnessFound,
}

impl QuadraticSymbol {
    /// Validates shapes, finiteness, and symmetry of the xx and ξξ blocks
    /// (to 1e-12 relative), then stores exactly symmetrized blocks.
    pub fn new(qxx: CMatrix, qxxi: CMatrix, qxixi: CMatrix) -> Result<Self> {
        let n = qxx.require_square()?;
        for m in [&qxx, &qxxi, &qxixi] {
            m.require_finite()?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::ShapeMismatch { expected: (n, n), got: (m.rows(), m.cols()) });
            }
        }
        if !qxx.is_symmetric(1e-12) || !qxixi.is_symmetric(1e-12) {
            return Err(Error::NotSymmetric);
        }
        let sym = |m: &CMatrix| CMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)]) * 0.5);
        Ok(QuadraticSymbol { n, qxx: sym(&qxx), qxxi, qxixi: sym(&qxixi) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn qxx(&self) -> &CMatrix {
        &self.qxx
    }

    pub fn qxxi(&self) -> &CMatrix {
        &self.qxxi
    }

    pub fn qxixi(&self) -> &CMatrix {
        &self.qxixi
    }

    /// The symmetric 2n×2n coefficient matrix Q with q(v) = v·Qv.
    pub fn coefficient_matrix(&self) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => self.qxx[(i, j)],
            (true, false) => self.qxxi[(i, j - n)],
            (false, true) => self.qxxi[(j, i - n)],
            (false, false) => self.qxixi[(i - n, j - n)],
        })
    }

    /// q evaluated bilinearly (no conjugation) at a complex phase-space point.
    pub fn eval(&self, v: &[Complex64]) -> Complex64 {
        debug_assert_eq!(v.len(), 2 * self.n);
        let q = self.coefficient_matrix();
        crate::numkit::vec_bilinear(v, &q.matvec(v))
    }

    /// q at a real phase-space point.
    pub fn eval_real(&self, v: &[f64]) -> Complex64 {
        let vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.eval(&vc)
    }

    /// Entrywise real part, itself a (real-valued) quadratic symbol.
    pub fn real_part(&self) -> QuadraticSymbol {
        QuadraticSymbol {
            n: self.n,
            qxx: self.qxx.real_part(),
            qxxi: self.qxxi.real_part(),
            qxixi: self.qxixi.real_part(),
        }
    }

    /// Entrywise imaginary part.
    pub fn imag_part(&self) -> QuadraticSymbol {
        QuadraticSymbol {
            n: self.n,
            qxx: self.qxx.imag_part(),
            qxxi: self.qxxi.imag_part(),
            qxixi: self.qxixi.imag_part(),
        }
    }

    /// The real Hessian of Re q as a form on R^{2n} (so Re q(v) = ½ v·H·v).
    pub fn real_part_hessian(&self) -> RealSymmetric {
        let q = self.coefficient_matrix();
        RealSymmetric::from_fn(2 * self.n, |i, j| q[(i, j)].re + q[(j, i)].re)
    }

    /// Scales the symbol by a complex constant.
    pub fn scale(&self, a: Complex64) -> QuadraticSymbol {
        QuadraticSymbol {
            n: self.n,
            qxx: self.qxx.scale(a),
            qxxi: self.qxxi.scale(a),
            qxixi: self.qxixi.scale(a),
        }
    }

    pub fn add(&self, other: &QuadraticSymbol) -> QuadraticSymbol {
        QuadraticSymbol {
            n: self.n,
            qxx: &self.qxx + &other.qxx,
            qxxi: &self.qxxi + &other.qxxi,
            qxixi: &self.qxixi + &other.qxixi,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.qxx.max_abs().max(self.qxxi.max_abs()).max(self.qxixi.max_abs())
    }
}

/// σ((x,ξ), (y,η)) = ξ·y − η·x, bilinear without conjugation.
pub fn symplectic(v: &[Complex64], w: &[Complex64]) -> Result<Complex64> {
    if v.len() != w.len() || v.len() % 2 != 0 {
        return Err(Error::ShapeMismatch { expected: (v.len(), 1), got: (w.len(), 1) });
    }
    let n = v.len() / 2;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += v[n + j] * w[j] - w[n + j] * v[j];
    }
    Ok(acc)
}

/// Real-argument convenience wrapper around [`symplectic`].
pub fn symplectic_real(v: &[f64], w: &[f64]) -> Result<f64> {
    let vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let wc: Vec<Complex64> = w.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    Ok(symplectic(&vc, &wc)?.re)
}

/// F = ½ [[q''_{ξx}, q''_{ξξ}], [−q''_{xx}, −q''_{xξ}]], the unique matrix
/// with σ(v, Fv) = q(v) and σ(v, Fw) = −σ(Fv, w).
pub fn fundamental_matrix(q: &QuadraticSymbol) -> FundamentalMatrix {
    let n = q.n;
    let f = CMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => q.qxxi[(j, i)],
        (true, false) => q.qxixi[(i, j - n)],
        (false, true) => -q.qxx[(i - n, j)],
        (false, false) => -q.qxxi[(i - n, j - n)],
    });
    FundamentalMatrix { n, f }
}

impl FundamentalMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.f
    }

    /// Wraps an existing 2n×2n Hamilton matrix.
    pub fn from_matrix(f: CMatrix) -> Result<Self> {
        let d = f.require_square()?;
        if d % 2 != 0 {
            return Err(Error::NotSquare { rows: d, cols: d });
        }
        Ok(FundamentalMatrix { n: d / 2, f })
    }

    pub fn spectrum(&self) -> Result<Vec<Complex64>> {
        crate::numkit::eigenvalues(&self.f)
    }

    pub fn norm(&self) -> f64 {
        spectral_norm(&self.f)
    }

    /// Reads a quadratic symbol back from a Hamilton matrix via
    /// q(v) := σ(v, Fv). Blocks are symmetrized where the symbol demands it.
    pub fn to_symbol(&self) -> Result<QuadraticSymbol> {
        let n = self.n;
        let f11 = CMatrix::from_fn(n, n, |i, j| self.f[(i, j)]);
        let f12 = CMatrix::from_fn(n, n, |i, j| self.f[(i, j + n)]);
        let f21 = CMatrix::from_fn(n, n, |i, j| self.f[(i + n, j)]);
        let f22 = CMatrix::from_fn(n, n, |i, j| self.f[(i + n, j + n)]);
        let qxx = CMatrix::from_fn(n, n, |i, j| -(f21[(i, j)] + f21[(j, i)]) * 0.5);
        let qxixi = CMatrix::from_fn(n, n, |i, j| (f12[(i, j)] + f12[(j, i)]) * 0.5);
        let qxxi = CMatrix::from_fn(n, n, |i, j| (f11[(j, i)] - f22[(i, j)]) * 0.5);
        QuadraticSymbol::new(qxx, qxxi, qxixi)
    }
}

/// Poisson bracket {q1, q2} computed through the fundamental-matrix identity
/// F({q1, q2}) = −2 [F(q1), F(q2)].
pub fn poisson_bracket(q1: &QuadraticSymbol, q2: &QuadraticSymbol) -> Result<QuadraticSymbol> {
    if q1.n != q2.n {
        return Err(Error::ShapeMismatch { expected: (q1.n, q1.n), got: (q2.n, q2.n) });
    }
    let f1 = fundamental_matrix(q1).f;
    let f2 = fundamental_matrix(q2).f;
    let comm = &(&f1 * &f2) - &(&f2 * &f1);
    let fb = FundamentalMatrix { n: q1.n, f: comm.scale(Complex64::new(-2.0, 0.0)) };
    fb.to_symbol()
}

/// Absolute threshold on |q| for a zero-set witness (unit-sphere points).
pub const BRACKET_ZERO_TOL: f64 = 1e-8;
/// Absolute threshold on |{Im q, Re q}| for the bracket to count as nonzero.
pub const BRACKET_VALUE_TOL: f64 = 1e-6;

/// Multi-start projected gradient search for a real unit vector where q
/// vanishes and the Poisson bracket {Im q, Re q} does not. A raised flag
/// certifies that the spectrum of the quantization is the whole plane;
/// `NoWitnessFound` proves nothing.
///
/// Deterministic for a fixed seed: restarts are independent and the best
/// witness (smallest |q|, ties broken by largest |bracket|) is selected.
pub fn spectrum_is_c_flag(q: &QuadraticSymbol, restarts: usize, seed: u64) -> Result<BracketFlag> {
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be >= 1".into()));
    }
    let n2 = 2 * q.n;
    let bracket = poisson_bracket(&q.imag_part(), &q.real_part())?;
    let qmat = q.coefficient_matrix();
    let re_mat = RealSymmetric::from_fn(n2, |i, j| (qmat[(i, j)].re + qmat[(j, i)].re) * 0.5);
    let im_mat = RealSymmetric::from_fn(n2, |i, j| (qmat[(i, j)].im + qmat[(j, i)].im) * 0.5);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, f64, Vec<f64>)> = None;

    for _ in 0..restarts {
        let mut v = random_unit(&mut rng, n2);
        // projected gradient descent on |q|² restricted to the sphere
        let mut fval = abs_q_sq(&re_mat, &im_mat, &v);
        for _iter in 0..400 {
            let re = re_mat.quad(&v);
            let im = im_mat.quad(&v);
            // gradient of (v·Av)² + (v·Bv)² is 4(re·Av + im·Bv)
            let ga = re_mat.matvec(&v);
            let gb = im_mat.matvec(&v);
            let mut g: Vec<f64> = ga.iter().zip(&gb).map(|(a, b)| 4.0 * (re * a + im * b)).collect();
            let gdotv: f64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (gi, vi) in g.iter_mut().zip(&v) {
                *gi -= gdotv * vi;
            }
            let gnorm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
            if gnorm < 1e-14 || fval < 1e-30 {
                break;
            }
            let mut step = 1.0;
            let mut improved = false;
            for _ in 0..40 {
                let mut cand: Vec<f64> = v.iter().zip(&g).map(|(vi, gi)| vi - step * gi).collect();
                normalize(&mut cand);
                let fc = abs_q_sq(&re_mat, &im_mat, &cand);
                if fc < fval * (1.0 - 1e-12) {
                    v = cand;
                    fval = fc;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        let qv = abs_q_sq(&re_mat, &im_mat, &v).sqrt();
        let bv = bracket.eval_real(&v).re;
        let cand_better = match &best {
            None => true,
            Some((bq, bb, _)) => qv < *bq - 1e-15 || (qv <= *bq + 1e-15 && bv.abs() > bb.abs()),
        };
        if cand_better {
            best = Some((qv, bv, v));
        }
    }

    match best {
        Some((qv, bv, v)) if qv <= BRACKET_ZERO_TOL && bv.abs() >= BRACKET_VALUE_TOL => {
            Ok(BracketFlag::FlagRaised { witness: v, symbol_value: qv, bracket_value: bv })
        }
        _ => Ok(BracketFlag::NoWitnessFound),
    }
}

fn abs_q_sq(re_mat: &RealSymmetric, im_mat: &RealSymmetric, v: &[f64]) -> f64 {
    let re = re_mat.quad(v);
    let im = im_mat.quad(v);
    re * re + im * im
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// The averaging index J(v) = min{k ≥ 0 : Re F (Im F)^k v ≠ 0} for real v,
/// with "nonzero" meaning norm above 1e-10·‖F‖^{k+1}·‖v‖ and the
/// Cayley-Hamilton cutoff 2n−1. Requires Re q positive semidefinite.
pub fn index_j(q: &QuadraticSymbol, v: &[f64]) -> Result<EscapeIndex> {
    let n2 = 2 * q.n;
    if v.len() != n2 {
        return Err(Error::ShapeMismatch { expected: (n2, 1), got: (v.len(), 1) });
    }
    let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if vnorm == 0.0 {
        return Err(Error::InvalidArgument("index is undefined at v = 0".into()));
    }
    if psd_classify(&q.real_part_hessian(), 1e-10)? == PsdClass::Indefinite {
        return Err(Error::RealPartNotPsd);
    }
    let f = fundamental_matrix(q);
    let re_f = f.f.real_part();
    let im_f = f.f.imag_part();
    let fnorm = f.norm().max(1e-300);

    let mut iter: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    for k in 0..=(2 * q.n - 1) {
        let probe = re_f.matvec(&iter);
        let norm = crate::numkit::vec_norm(&probe);
        if norm > 1e-10 * fnorm.powi(k as i32 + 1) * vnorm {
            return Ok(EscapeIndex::Finite(k));
        }
        iter = im_f.matvec(&iter);
    }
    Ok(EscapeIndex::Infinite)
}

/// Fixed example symbols used across the test suites and docs.
pub mod examples {
    use super::*;

    /// ½(x² + ξ²) in dimension one.
    pub fn harmonic_oscillator() -> QuadraticSymbol {
        QuadraticSymbol::new(
            CMatrix::diag(&[Complex64::new(0.5, 0.0)]),
            CMatrix::zeros(1, 1),
            CMatrix::diag(&[Complex64::new(0.5, 0.0)]),
        )
        .unwrap()
    }

    /// q_θ = ξ² + e^{2iθ} x².
    pub fn rotated_oscillator(theta: f64) -> QuadraticSymbol {
        QuadraticSymbol::new(
            CMatrix::diag(&[Complex64::from_polar(1.0, 2.0 * theta)]),
            CMatrix::zeros(1, 1),
            CMatrix::diag(&[Complex64::new(1.0, 0.0)]),
        )
        .unwrap()
    }

    /// q_{a,b} = (b/2)(x₁²+ξ₁²) + ½(x₂²+ξ₂²) − i a (x₁ξ₂ − x₂ξ₁).
    pub fn fokker_planck(a: f64, b: f64) -> QuadraticSymbol {
        let qxx = CMatrix::diag(&[Complex64::new(b / 2.0, 0.0), Complex64::new(0.5, 0.0)]);
        let qxixi = qxx.clone();
        let qxxi = CMatrix::from_rows(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, -a / 2.0),
                Complex64::new(0.0, a / 2.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        QuadraticSymbol::new(qxx, qxxi, qxixi).unwrap()
    }

    /// The 2×2 drift matrix of the Fokker-Planck family.
    pub fn fokker_planck_drift(a: f64, b: f64) -> CMatrix {
        CMatrix::from_rows(
            2,
            2,
            &[
                Complex64::new(b, 0.0),
                Complex64::new(-a, 0.0),
                Complex64::new(a, 0.0),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap()
    }
}
