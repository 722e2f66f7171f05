//! Strictly convex quadratic weights Φ on C^n and everything derived from Φ
//! alone or from a pair (M, Φ): the Hermitian/pluriharmonic split (G, h, H),
//! the smoothing ceiling Δ₀, shifted weights Φ^(δ), the ellipticity form Θ,
//! the escape indices I(z) and I₀, and the small-time coefficient k₁.

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::error::Error;
use crate::numkit::{
    from_real_pair, herm_sqrt, inverse, psd_classify, to_real_pair, CMatrix, PsdClass,
    RealSymmetric,
};
use crate::symbol::EscapeIndex;
use crate::Result;

/// A real-valued quadratic form on C^n ≅ R^{2n}, stored by its real Hessian,
/// so that Q(z) = ½ v·hess·v with v = (Re z, Im z).
#[derive(Debug, Clone)]
pub struct RealQForm {
    n: usize,
    hess: RealSymmetric,
}

impl RealQForm {
    pub fn from_hessian(n: usize, hess: RealSymmetric) -> Result<Self> {
        if hess.dim() != 2 * n {
            return Err(Error::ShapeMismatch { expected: (2 * n, 2 * n), got: (hess.dim(), hess.dim()) });
        }
        Ok(RealQForm { n, hess })
    }

    /// Builds the Hessian by polarization of an arbitrary evaluation closure.
    pub fn from_eval(n: usize, mut f: impl FnMut(&[Complex64]) -> f64) -> Self {
        let dim = 2 * n;
        let basis = |k: usize| {
            let mut v = vec![0.0; dim];
            v[k] = 1.0;
            from_real_pair(&v)
        };
        let mut hess = RealSymmetric::zeros(dim);
        let singles: Vec<f64> = (0..dim).map(|k| f(&basis(k))).collect();
        for a in 0..dim {
            hess.set(a, a, 2.0 * singles[a]);
            for b in a + 1..dim {
                let mut v = vec![0.0; dim];
                v[a] = 1.0;
                v[b] = 1.0;
                let q = f(&from_real_pair(&v));
                hess.set(a, b, q - singles[a] - singles[b]);
            }
        }
        RealQForm { n, hess }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hessian(&self) -> &RealSymmetric {
        &self.hess
    }

    pub fn eval(&self, z: &[Complex64]) -> f64 {
        0.5 * self.hess.quad(&to_real_pair(z))
    }

    pub fn eval_real(&self, v: &[f64]) -> f64 {
        0.5 * self.hess.quad(v)
    }

    /// The unique symmetric real-bilinear extension with Q(z, z) = Q(z).
    pub fn bilinear(&self, z: &[Complex64], w: &[Complex64]) -> f64 {
        let vz = to_real_pair(z);
        let vw = to_real_pair(w);
        0.5 * vz.iter().zip(self.hess.matvec(&vw)).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn classify(&self, rel_tol: f64) -> Result<PsdClass> {
        psd_classify(&self.hess, rel_tol)
    }

    /// sup_{|z|=1} |Q(z)| (the spectral norm of the form).
    pub fn form_norm(&self) -> Result<f64> {
        Ok(0.5 * self.hess.spectral_norm()?)
    }

    /// Splits Q = Q_herm + Q_plh with Q_herm(z) = ½(Q(z) + Q(iz)).
    /// Returns the Hessian of the Hermitian part.
    pub fn hermitian_part_hessian(&self) -> RealSymmetric {
        let n = self.n;
        let dim = 2 * n;
        // J = real representation of multiplication by i: (x, y) -> (-y, x)
        let h = self.hess.to_dense();
        let jt_h_j = |i: usize, j: usize| {
            // (Jᵀ H J)_{ij} = H_{J(i), J(j)} with sign bookkeeping:
            // J e_k = e_{k+n} for k < n, J e_k = -e_{k-n} otherwise
            let (pi, si) = if i < n { (i + n, 1.0) } else { (i - n, -1.0) };
            let (pj, sj) = if j < n { (j + n, 1.0) } else { (j - n, -1.0) };
            si * sj * h[pi * dim + pj]
        };
        RealSymmetric::from_fn(dim, |i, j| 0.5 * (h[i * dim + j] + jt_h_j(i, j)))
    }

    /// Hermitian matrix S with Q_herm(z) = z^† S z.
    pub fn hermitian_part_matrix(&self) -> CMatrix {
        let n = self.n;
        let qh = |z: &[Complex64]| {
            let iz: Vec<Complex64> = z.iter().map(|w| w * Complex64::new(0.0, 1.0)).collect();
            0.5 * (self.eval(z) + self.eval(&iz))
        };
        let e = |k: usize, val: Complex64| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[k] = val;
            v
        };
        let one = Complex64::new(1.0, 0.0);
        let i_unit = Complex64::new(0.0, 1.0);
        let mut s = CMatrix::zeros(n, n);
        let diag: Vec<f64> = (0..n).map(|k| qh(&e(k, one))).collect();
        for j in 0..n {
            s[(j, j)] = Complex64::new(diag[j], 0.0);
        }
        for j in 0..n {
            for k in j + 1..n {
                let mut v = e(j, one);
                v[k] = one;
                let d1 = qh(&v) - diag[j] - diag[k];
                let mut v = e(j, one);
                v[k] = i_unit;
                let d_i = qh(&v) - diag[j] - diag[k];
                // with z = e_j + μ e_k: Q_h - diag terms = 2 Re(μ S_jk)
                let re = 0.5 * d1;
                let im = -0.5 * d_i;
                s[(j, k)] = Complex64::new(re, im);
                s[(k, j)] = Complex64::new(re, -im);
            }
        }
        s
    }

    /// Complex symmetric C with Q_plh(z) = Re(zᵀ C z).
    pub fn pluriharmonic_part_matrix(&self) -> CMatrix {
        let n = self.n;
        let qp = |z: &[Complex64]| {
            let iz: Vec<Complex64> = z.iter().map(|w| w * Complex64::new(0.0, 1.0)).collect();
            0.5 * (self.eval(z) - self.eval(&iz))
        };
        let one = Complex64::new(1.0, 0.0);
        let i_unit = Complex64::new(0.0, 1.0);
        let omega = Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4);
        let e = |k: usize, val: Complex64| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[k] = val;
            v
        };
        let mut c = CMatrix::zeros(n, n);
        for j in 0..n {
            let re = qp(&e(j, one));
            let im = -qp(&e(j, omega));
            c[(j, j)] = Complex64::new(re, im);
        }
        for j in 0..n {
            for k in j + 1..n {
                let qj = qp(&e(j, one));
                let qk = qp(&e(k, one));
                let qk_i = qp(&e(k, i_unit));
                let mut v = e(j, one);
                v[k] = one;
                let d1 = qp(&v) - qj - qk;
                let mut v = e(j, one);
                v[k] = i_unit;
                let d_i = qp(&v) - qj - qk_i;
                // Q_p(e_j + μ e_k) - Q_p(e_j) - Q_p(μ e_k) = 2 Re(μ C_jk)
                let re = 0.5 * d1;
                let im = -0.5 * d_i;
                c[(j, k)] = Complex64::new(re, im);
                c[(k, j)] = Complex64::new(re, im);
            }
        }
        c
    }
}

/// The smoothing ceiling Δ₀ = −½ log ‖H‖, infinite when the pluriharmonic
/// part vanishes. A distinguished variant, never a float sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaCeiling {
    Infinite,
    Finite(f64),
}

impl DeltaCeiling {
    pub fn as_f64(&self) -> f64 {
        match self {
            DeltaCeiling::Infinite => f64::INFINITY,
            DeltaCeiling::Finite(v) => *v,
        }
    }
}

/// A strictly convex real-quadratic weight Φ on C^n with its derived
/// decomposition Φ = ½|Gz|² − Re h(z), h(z) = ½ z·hpp·z, and
/// H = (G^{-1})ᵀ·hpp·G^{-1}.
#[derive(Debug, Clone)]
pub struct Weight {
    form: RealQForm,
    g: CMatrix,
    g_inv: CMatrix,
    hpp: CMatrix,
    big_h: CMatrix,
}

impl Weight {
    /// Validates strict convexity (positive definite Hessian) and computes
    /// the decomposition once.
    pub fn new(n: usize, hess: RealSymmetric) -> Result<Self> {
        let form = RealQForm::from_hessian(n, hess)?;
        if form.classify(1e-12)? != PsdClass::PositiveDefinite {
            return Err(Error::NonConvexWeight);
        }
        let s = form.hermitian_part_matrix();
        let two_s = s.scale(Complex64::new(2.0, 0.0));
        let g = herm_sqrt(&two_s)?;
        let g_inv = inverse(&g)?;
        let c = form.pluriharmonic_part_matrix();
        let hpp = c.scale(Complex64::new(-2.0, 0.0));
        let big_h = &(&g_inv.transpose() * &hpp) * &g_inv;
        Ok(Weight { form, g, g_inv, hpp, big_h })
    }

    /// Φ(z) = ½|z|².
    pub fn standard(n: usize) -> Self {
        Weight::new(n, RealSymmetric::identity(2 * n)).expect("standard weight is strictly convex")
    }

    /// Φ(z) = ½(|z|² − sin θ · Re z²) in one variable.
    pub fn rotated_oscillator(theta: f64) -> Self {
        let s = theta.sin();
        let mut hess = RealSymmetric::zeros(2);
        hess.set(0, 0, 1.0 - s);
        hess.set(1, 1, 1.0 + s);
        Weight::new(1, hess).expect("strictly convex for |θ| < π/2")
    }

    /// Builds Φ = ½|Gz|² − Re(½ z·hpp·z) from its decomposition data.
    pub fn from_parts(g: &CMatrix, hpp: &CMatrix) -> Result<Self> {
        let n = g.require_square()?;
        let g = g.clone();
        let hpp0 = hpp.clone();
        let form = RealQForm::from_eval(n, |z| {
            let gz = g.matvec(z);
            let h = crate::numkit::vec_bilinear(z, &hpp0.matvec(z)) * 0.5;
            0.5 * gz.iter().map(|w| w.norm_sqr()).sum::<f64>() - h.re
        });
        Weight::new(n, form.hessian().clone())
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn form(&self) -> &RealQForm {
        &self.form
    }

    pub fn hessian(&self) -> &RealSymmetric {
        self.form.hessian()
    }

    pub fn eval(&self, z: &[Complex64]) -> f64 {
        self.form.eval(z)
    }

    /// The positive definite Hermitian factor G.
    pub fn g(&self) -> &CMatrix {
        &self.g
    }

    pub fn g_inv(&self) -> &CMatrix {
        &self.g_inv
    }

    /// Φ''_zz: the symmetric matrix of the holomorphic quadratic h.
    pub fn hpp(&self) -> &CMatrix {
        &self.hpp
    }

    /// H = (G^{-1})ᵀ·hpp·G^{-1}.
    pub fn big_h(&self) -> &CMatrix {
        &self.big_h
    }

    /// True when the pluriharmonic part of Φ vanishes.
    pub fn h_vanishes(&self) -> bool {
        self.hpp.max_abs() <= 1e-12 * self.form.hessian().max_abs().max(1.0)
    }

    /// Matrix D with v·D·v = |Gz|² (twice the Hermitian part of Φ).
    pub fn gz_sq_matrix(&self) -> RealSymmetric {
        self.form.hermitian_part_hessian()
    }

    /// h(z) = ½ z·hpp·z.
    pub fn h_at(&self, z: &[Complex64]) -> Complex64 {
        crate::numkit::vec_bilinear(z, &self.hpp.matvec(z)) * 0.5
    }

    /// ∂_z Φ = Sᵀ z̄ + C z with S the Hermitian and C the pluriharmonic matrix.
    pub fn grad_z(&self, z: &[Complex64]) -> Vec<Complex64> {
        let s = self.form.hermitian_part_matrix();
        let zbar: Vec<Complex64> = z.iter().map(|w| w.conj()).collect();
        let st_zbar = s.transpose().matvec(&zbar);
        let c = self.form.pluriharmonic_part_matrix();
        let cz = c.matvec(z);
        st_zbar.iter().zip(&cz).map(|(a, b)| a + b).collect()
    }

    /// Δ₀ = −½ log ‖H‖; infinite when h = 0.
    pub fn delta_ceiling(&self) -> Result<DeltaCeiling> {
        if self.h_vanishes() {
            return Ok(DeltaCeiling::Infinite);
        }
        let norm = crate::numkit::spectral_norm(&self.big_h);
        if !(norm > 0.0) {
            return Ok(DeltaCeiling::Infinite);
        }
        Ok(DeltaCeiling::Finite(-0.5 * norm.ln()))
    }

    /// Φ^(δ)(z) = Φ(z) + ((e^{−2δ} − 1)/2)·|Gz|², with its convexity class.
    /// Non-convex results are legal inputs to downstream comparisons.
    pub fn shifted(&self, delta: f64) -> Result<(RealQForm, PsdClass)> {
        let factor = (-2.0 * delta).exp() - 1.0;
        let herm = self.form.hermitian_part_hessian();
        let dim = 2 * self.n();
        let hess = RealSymmetric::from_fn(dim, |i, j| {
            self.form.hessian().get(i, j) + factor * herm.get(i, j)
        });
        let form = RealQForm::from_hessian(self.n(), hess)?;
        let class = form.classify(1e-12)?;
        Ok((form, class))
    }
}

// ── (M, Φ) machinery ────────────────────────────────────────────────

/// Θ(z) = 2 Re((Mz)·Φ'_z(z)), the t-derivative of Φ(e^{tM}z) at t = 0,
/// as a real quadratic form.
pub fn theta_form(m: &CMatrix, w: &Weight) -> RealQForm {
    let n = w.n();
    let r = m.real_representation();
    let h = w.hessian().to_dense();
    let dim = 2 * n;
    // hess_Θ = Rᵀ·hess + hess·R (symmetric because Θ is the symmetrized form)
    let hess = RealSymmetric::from_fn(dim, |i, j| {
        let mut acc = 0.0;
        for k in 0..dim {
            acc += r[(k, i)].re * h[k * dim + j] + h[i * dim + k] * r[(k, j)].re;
        }
        acc
    });
    RealQForm::from_hessian(n, hess).expect("dimensions agree by construction")
}

/// Classification of Θ with the tie convention of `psd_classify`; errors when
/// indefinite, since escape indices require Θ ≥ 0.
fn require_theta_psd(theta: &RealQForm) -> Result<()> {
    if theta.classify(1e-10)? == PsdClass::Indefinite {
        return Err(Error::ThetaIndefinite);
    }
    Ok(())
}

/// I(z) = min{k ≥ 0 : Θ(M^k z) ≠ 0}, cut off at 2n−2 per Cayley-Hamilton;
/// requires Θ positive semidefinite. "Nonzero" means above
/// 1e-10·‖Θ‖·‖M^k z‖².
pub fn index_i(m: &CMatrix, w: &Weight, z: &[Complex64]) -> Result<EscapeIndex> {
    let theta = theta_form(m, w);
    require_theta_psd(&theta)?;
    let norm = theta.form_norm()?.max(1e-300);
    let n = w.n();
    let cutoff = (2 * n).saturating_sub(2);
    let mut zk = z.to_vec();
    for k in 0..=cutoff {
        let zn: f64 = zk.iter().map(|w| w.norm_sqr()).sum();
        if theta.eval(&zk) > 1e-10 * norm * zn {
            return Ok(EscapeIndex::Finite(k));
        }
        zk = m.matvec(&zk);
    }
    Ok(EscapeIndex::Infinite)
}

/// Real PSD square root factor T with Q(v) = ‖Tv‖² for a PSD form Q = ½vᵀHv.
fn psd_factor(hess: &RealSymmetric) -> Result<CMatrix> {
    let dim = hess.dim();
    let (vals, vecs) = hess.eigen()?;
    let scale = vals.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let mut t = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let lam = vals[k];
        if lam <= 1e-12 * scale.max(1e-300) {
            continue;
        }
        let root = (0.5 * lam).sqrt();
        for j in 0..dim {
            t[(k, j)] = Complex64::new(root * vecs[j * dim + k], 0.0);
        }
    }
    Ok(t)
}

/// The global index I₀ = max{I(z) : |z| = 1} with the nested-kernel chain
/// dims [dim V_0, dim V_1, ...], V_k = {z : Θ(M^j z) = 0, j ≤ k}.
pub fn global_index(m: &CMatrix, w: &Weight) -> Result<(EscapeIndex, Vec<usize>)> {
    let theta = theta_form(m, w);
    require_theta_psd(&theta)?;
    let n = w.n();
    let dim = 2 * n;
    let t = psd_factor(theta.hessian())?;
    let r = m.real_representation();
    let cutoff = (2 * n).saturating_sub(2);
    let mut chain = Vec::new();
    let mut stacked: Option<CMatrix> = None;
    let mut rj = CMatrix::identity(dim);
    for k in 0..=cutoff {
        let block = &t * &rj;
        stacked = Some(match stacked {
            None => block,
            Some(s) => stack_rows(&s, &block),
        });
        let s = stacked.as_ref().unwrap();
        let rank = crate::numkit::rank(s, 1e-10)?;
        let null_dim = dim - rank;
        chain.push(null_dim);
        if null_dim == 0 {
            return Ok((EscapeIndex::Finite(k), chain));
        }
        rj = &r * &rj;
    }
    Ok((EscapeIndex::Infinite, chain))
}

fn stack_rows(a: &CMatrix, b: &CMatrix) -> CMatrix {
    CMatrix::from_fn(a.rows() + b.rows(), a.cols(), |i, j| {
        if i < a.rows() {
            a[(i, j)]
        } else {
            b[(i - a.rows(), j)]
        }
    })
}

/// Leading escape coefficient (1/(2I+1)!)·C(2I, I)·Θ(M^I z) of
/// Φ(e^{tM}z) − Φ(z) at a point with finite index I.
pub fn escape_coefficient(m: &CMatrix, w: &Weight, z: &[Complex64]) -> Result<f64> {
    let idx = match index_i(m, w, z)? {
        EscapeIndex::Finite(k) => k,
        EscapeIndex::Infinite => return Err(Error::InfiniteIndex),
    };
    let theta = theta_form(m, w);
    let mut zk = z.to_vec();
    for _ in 0..idx {
        zk = m.matvec(&zk);
    }
    Ok(escape_prefactor(idx) * theta.eval(&zk))
}

/// (1/(2I+1)!)·binom(2I, I)
pub fn escape_prefactor(index: usize) -> f64 {
    let mut binom = 1.0f64;
    for j in 0..index {
        binom *= (index + 1 + j) as f64 / (j + 1) as f64;
    }
    let mut fact = 1.0f64;
    for j in 1..=(2 * index + 1) {
        fact *= j as f64;
    }
    binom / fact
}

/// k₁ = prefactor(I₀) · min{Θ(M^{I₀}z)/|Gz|² : z ∈ V_{I₀−1}, |z| = 1},
/// computed as a generalized symmetric eigenvalue problem restricted to the
/// kernel subspace V_{I₀−1} (all of C^n when I₀ = 0).
pub fn k1_coefficient(m: &CMatrix, w: &Weight) -> Result<f64> {
    let (idx, _) = global_index(m, w)?;
    let i0 = match idx {
        EscapeIndex::Finite(k) => k,
        EscapeIndex::Infinite => return Err(Error::InfiniteIndex),
    };
    let n = w.n();
    let dim = 2 * n;
    let theta = theta_form(m, w);
    let r = m.real_representation();

    // basis of V_{I₀−1}
    let basis = if i0 == 0 {
        CMatrix::identity(dim)
    } else {
        let t = psd_factor(theta.hessian())?;
        let mut stacked: Option<CMatrix> = None;
        let mut rj = CMatrix::identity(dim);
        for _ in 0..i0 {
            let block = &t * &rj;
            stacked = Some(match stacked {
                None => block,
                Some(s) => stack_rows(&s, &block),
            });
            rj = &r * &rj;
        }
        crate::numkit::nullspace(&stacked.unwrap(), 1e-10)?
    };
    let d = basis.cols();
    if d == 0 {
        return Err(Error::InfiniteIndex);
    }

    // numerator ½ vᵀ (R^{I₀})ᵀ hess_Θ R^{I₀} v, denominator vᵀ herm_hess v
    let mut ri0 = CMatrix::identity(dim);
    for _ in 0..i0 {
        ri0 = &r * &ri0;
    }
    let ht = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(theta.hessian().get(i, j), 0.0));
    let num_full = &(&ri0.transpose() * &ht) * &ri0;
    let den_h = w.gz_sq_matrix();
    let den_full = CMatrix::from_fn(dim, dim, |i, j| Complex64::new(den_h.get(i, j), 0.0));

    let num_s = &(&basis.transpose() * &num_full) * &basis;
    let den_s = &(&basis.transpose() * &den_full) * &basis;
    let num_sym = RealSymmetric::from_fn(d, |i, j| 0.5 * (num_s[(i, j)].re + num_s[(j, i)].re));
    let den_sym = RealSymmetric::from_fn(d, |i, j| 0.5 * (den_s[(i, j)].re + den_s[(j, i)].re));

    let lam_min = generalized_min_eigenvalue(&num_sym, &den_sym)?;
    Ok(escape_prefactor(i0) * 0.5 * lam_min)
}

/// Smallest λ with A v = λ B v for symmetric A and positive definite B.
pub fn generalized_min_eigenvalue(a: &RealSymmetric, b: &RealSymmetric) -> Result<f64> {
    let d = a.dim();
    let (bvals, bvecs) = b.eigen()?;
    let bmax = bvals.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    if bvals.iter().any(|&x| x <= 1e-13 * bmax.max(1e-300)) {
        return Err(Error::NotPositiveDefinite { eigenvalue: bvals[0] });
    }
    // C = B^{-1/2} A B^{-1/2} in the eigenbasis of B
    let mut w = vec![0.0; d * d];
    let ad = a.to_dense();
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0.0;
            for p in 0..d {
                for q in 0..d {
                    acc += bvecs[p * d + i] * ad[p * d + q] * bvecs[q * d + j];
                }
            }
            w[i * d + j] = acc / (bvals[i].sqrt() * bvals[j].sqrt());
        }
    }
    let c = RealSymmetric::from_dense(d, &w)?;
    Ok(c.eigenvalues()?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::expm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_weight(n: usize, seed: &mut u64) -> Weight {
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        loop {
            let raw: Vec<f64> = (0..4 * n * n).map(|_| next()).collect();
            let dim = 2 * n;
            // diagonally dominated symmetric candidate
            let mut h = RealSymmetric::from_dense(dim, &raw).unwrap();
            for i in 0..dim {
                h.set(i, i, h.get(i, i).abs() + 1.0);
            }
            if let Ok(w) = Weight::new(n, h) {
                return w;
            }
        }
    }

    #[test]
    fn standard_weight_decomposition() {
        let w = Weight::standard(2);
        assert!((&w.g().clone() - &CMatrix::identity(2)).max_abs() < 1e-12);
        assert!(w.hpp().max_abs() < 1e-13);
        assert!(w.h_vanishes());
        assert_eq!(w.delta_ceiling().unwrap(), DeltaCeiling::Infinite);
    }

    #[test]
    fn rotated_oscillator_decomposition() {
        let th = 5.0 * core::f64::consts::PI / 12.0;
        let w = Weight::rotated_oscillator(th);
        assert!((w.g()[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((w.hpp()[(0, 0)] - c(th.sin(), 0.0)).norm() < 1e-12);
        assert!((w.big_h()[(0, 0)] - c(th.sin(), 0.0)).norm() < 1e-12);
        // Δ₀ = −½ log sin θ
        match w.delta_ceiling().unwrap() {
            DeltaCeiling::Finite(d) => assert!((d + 0.5 * th.sin().ln()).abs() < 1e-12),
            DeltaCeiling::Infinite => panic!("expected finite ceiling"),
        }
    }

    #[test]
    fn split_reconstruction_random() {
        let mut seed = 5u64;
        for n in 1..=3usize {
            let w = random_weight(n, &mut seed);
            let mut s2 = 17u64.wrapping_add(n as u64);
            let mut next = move || {
                s2 = s2.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s2 >> 33) as f64) / (u32::MAX as f64) - 0.5
            };
            for _ in 0..30 {
                let z: Vec<Complex64> = (0..n).map(|_| c(next(), next())).collect();
                let gz = w.g().matvec(&z);
                let expect =
                    0.5 * gz.iter().map(|v| v.norm_sqr()).sum::<f64>() - w.h_at(&z).re;
                assert!(
                    (w.eval(&z) - expect).abs() < 1e-10 * (1.0 + expect.abs()),
                    "split reconstruction failed"
                );
            }
            // ‖H‖ < 1 for strictly convex weights
            assert!(crate::numkit::spectral_norm(w.big_h()) < 1.0);
        }
    }

    #[test]
    fn hermitian_split_consistency() {
        let mut seed = 23u64;
        let w = random_weight(2, &mut seed);
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        for _ in 0..20 {
            let z: Vec<Complex64> = (0..2).map(|_| c(next(), next())).collect();
            let iz: Vec<Complex64> = z.iter().map(|v| v * c(0.0, 1.0)).collect();
            let herm = 0.5 * (w.eval(&z) + w.eval(&iz));
            let plh = 0.5 * (w.eval(&z) - w.eval(&iz));
            assert!((herm + plh - w.eval(&z)).abs() < 1e-12);
            // matrix forms agree with evaluations
            let s = w.form().hermitian_part_matrix();
            let sz = s.matvec(&z);
            let herm_mat: f64 = z.iter().zip(&sz).map(|(a, b)| (a.conj() * b).re).sum();
            assert!((herm - herm_mat).abs() < 1e-11);
            let cm = w.form().pluriharmonic_part_matrix();
            let plh_mat = crate::numkit::vec_bilinear(&z, &cm.matvec(&z)).re;
            assert!((plh - plh_mat).abs() < 1e-11);
        }
    }

    #[test]
    fn takagi_normal_form_of_weight() {
        // Σ entries in [0,1) and Φ(G^{-1}Ūz) = ½(|z|² − Re z·Σz)
        let mut seed = 99u64;
        let w = random_weight(2, &mut seed);
        let tak = crate::numkit::takagi(w.big_h()).unwrap();
        assert!(tak.sigma.iter().all(|&s| (0.0..1.0).contains(&s)));
        let u = tak.unitary.conj();
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        for _ in 0..20 {
            let z: Vec<Complex64> = (0..2).map(|_| c(next(), next())).collect();
            let uz = u.matvec(&z);
            let guz = w.g_inv().matvec(&uz);
            let lhs = w.eval(&guz);
            let sig: f64 = z
                .iter()
                .zip(&tak.sigma)
                .map(|(zj, &s)| (zj * zj * s).re)
                .sum();
            let rhs = 0.5 * (z.iter().map(|v| v.norm_sqr()).sum::<f64>() - sig);
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn delta_ceiling_inversion() {
        // ‖H‖ = 1/e² gives Δ₀ = 1
        let target = (-2.0f64).exp();
        let w = Weight::from_parts(&CMatrix::identity(1), &CMatrix::diag(&[c(target, 0.0)])).unwrap();
        match w.delta_ceiling().unwrap() {
            DeltaCeiling::Finite(d) => assert!((d - 1.0).abs() < 1e-10),
            _ => panic!("expected finite"),
        }
    }

    #[test]
    fn shifted_weight_behavior() {
        let th = 5.0 * core::f64::consts::PI / 12.0;
        let w = Weight::rotated_oscillator(th);
        let (f0, class0) = w.shifted(0.0).unwrap();
        assert_eq!(class0, PsdClass::PositiveDefinite);
        let d = f0.hessian().to_dense();
        let d0 = w.hessian().to_dense();
        for (a, b) in d.iter().zip(&d0) {
            assert!((a - b).abs() < 1e-13);
        }
        // standard weight shifts to e^{−2δ}/2·|z|²
        let std = Weight::standard(1);
        let (f, _) = std.shifted(0.7).unwrap();
        let z = [c(0.3, -0.4)];
        let expect = 0.5 * (-1.4f64).exp() * 0.25;
        assert!((f.eval(&z) - expect).abs() < 1e-12);
        // at δ = Δ₀ the shifted weight is PSD but not PD
        let d0 = match w.delta_ceiling().unwrap() {
            DeltaCeiling::Finite(v) => v,
            _ => unreachable!(),
        };
        let (_, class) = w.shifted(d0).unwrap();
        assert_eq!(class, PsdClass::PositiveSemidefinite);
        // strictly decreasing in δ at points with Gz ≠ 0
        let (fa, _) = w.shifted(0.1).unwrap();
        let (fb, _) = w.shifted(0.2).unwrap();
        let z = [c(1.0, 0.5)];
        assert!(fb.eval(&z) < fa.eval(&z));
    }

    #[test]
    fn theta_examples() {
        // M = I, Φ = ½|z|² → Θ = |z|²
        let w = Weight::standard(1);
        let th = theta_form(&CMatrix::identity(1), &w);
        assert!((th.eval(&[c(2.0, 1.0)]) - 5.0).abs() < 1e-12);
        // M = i → Θ = 0
        let mi = CMatrix::diag(&[c(0.0, 1.0)]);
        let th = theta_form(&mi, &w);
        assert!(th.hessian().max_abs() < 1e-13);
        // Fokker-Planck drift: Θ PSD iff b ≥ 0, PD iff b > 0
        let w2 = Weight::standard(2);
        for (b, expect) in [
            (0.2, PsdClass::PositiveDefinite),
            (0.0, PsdClass::PositiveSemidefinite),
            (-0.2, PsdClass::Indefinite),
        ] {
            let m = crate::symbol::examples::fokker_planck_drift(0.5, b);
            let th = theta_form(&m, &w2);
            assert_eq!(th.classify(1e-10).unwrap(), expect, "b = {b}");
        }
    }

    #[test]
    fn theta_matches_time_derivative() {
        let mut seed = 31u64;
        let w = random_weight(2, &mut seed);
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as f64) / (u32::MAX as f64) - 0.5
        };
        let m = CMatrix::from_fn(2, 2, |_, _| c(next(), next()));
        let th = theta_form(&m, &w);
        let dt = 1e-6;
        for _ in 0..10 {
            let z: Vec<Complex64> = (0..2).map(|_| c(next(), next())).collect();
            let ep = expm(&m, c(dt, 0.0)).unwrap();
            let em = expm(&m, c(-dt, 0.0)).unwrap();
            let fd = (w.eval(&ep.matvec(&z)) - w.eval(&em.matvec(&z))) / (2.0 * dt);
            let tv = th.eval(&z);
            assert!((fd - tv).abs() < 1e-8 * (1.0 + tv.abs()), "fd={fd} theta={tv}");
        }
    }

    #[test]
    fn index_i_cases() {
        // PD Θ: I = 0 for all z
        let w = Weight::standard(1);
        assert_eq!(
            index_i(&CMatrix::identity(1), &w, &[c(0.3, 1.0)]).unwrap(),
            EscapeIndex::Finite(0)
        );
        // Fokker-Planck b = 0: I((1,0)) = 1
        let w2 = Weight::standard(2);
        let m = crate::symbol::examples::fokker_planck_drift(0.5, 0.0);
        assert_eq!(index_i(&m, &w2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap(), EscapeIndex::Finite(1));
        let (i0, chain) = global_index(&m, &w2).unwrap();
        assert_eq!(i0, EscapeIndex::Finite(1));
        assert_eq!(chain, vec![2, 0]);
        // indefinite Θ is rejected
        let mneg = crate::symbol::examples::fokker_planck_drift(0.5, -0.1);
        assert_eq!(index_i(&mneg, &w2, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap_err(), Error::ThetaIndefinite);
    }

    /// 3×3 drift with a two-step escape: Θ = |z₃|², V₁ = C·e₁, I₀ = 2.
    fn quintic_drift(a: f64, b: f64) -> CMatrix {
        CMatrix::from_rows(
            3,
            3,
            &[
                c(0.0, 0.0),
                c(-b, 0.0),
                c(0.0, 0.0),
                c(b, 0.0),
                c(0.0, 0.0),
                c(-a, 0.0),
                c(0.0, 0.0),
                c(a, 0.0),
                c(1.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn quintic_example_indices() {
        let (a, b) = (1.0, 0.5);
        let m = quintic_drift(a, b);
        let w = Weight::standard(3);
        let e1 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert_eq!(index_i(&m, &w, &e1).unwrap(), EscapeIndex::Finite(2));
        let (i0, chain) = global_index(&m, &w).unwrap();
        assert_eq!(i0, EscapeIndex::Finite(2));
        assert_eq!(chain, vec![4, 2, 0]);
        // Θ(M²e₁) = a²b²
        let th = theta_form(&m, &w);
        let m2e1 = m.matvec(&m.matvec(&e1));
        assert!((th.eval(&m2e1) - a * a * b * b).abs() < 1e-12);
        // escape coefficient at e₁: prefactor(2)·a²b² = 6/120·a²b² = a²b²/20
        let coef = escape_coefficient(&m, &w, &e1).unwrap();
        assert!((coef - a * a * b * b / 20.0).abs() < 1e-12);
        // k₁ equals the same value here (V₁ = C e₁ and |Gz|² = |z|²)
        let k1 = k1_coefficient(&m, &w).unwrap();
        assert!((k1 - a * a * b * b / 20.0).abs() < 1e-10);
    }

    #[test]
    fn escape_coefficient_matches_time_expansion() {
        // finite-difference fit of Φ(e^{tM}z) − Φ(z) ~ c·t^{2I+1}
        let m = crate::symbol::examples::fokker_planck_drift(0.5, 0.0);
        let w = Weight::standard(2);
        let z = [c(1.0, 0.0), c(0.0, 0.0)];
        let coef = escape_coefficient(&m, &w, &z).unwrap();
        // I = 1: fit against t³ on a small-t grid
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..10 {
            let t = 1e-3 * (1.0 + k as f64);
            let e = expm(&m, c(t, 0.0)).unwrap();
            let diff = w.eval(&e.matvec(&z)) - w.eval(&z);
            num += diff * t.powi(3);
            den += t.powi(6);
        }
        let fitted = num / den;
        assert!(
            (fitted - coef).abs() <= 0.05 * coef.abs(),
            "fitted {fitted} vs predicted {coef}"
        );
        // I = 0 collapse: coefficient equals Θ(z)
        let w1 = Weight::standard(1);
        let m1 = CMatrix::identity(1);
        let z1 = [c(0.7, -0.2)];
        let th = theta_form(&m1, &w1);
        assert!((escape_coefficient(&m1, &w1, &z1).unwrap() - th.eval(&z1)).abs() < 1e-12);
    }

    #[test]
    fn k1_elliptic_collapse() {
        // PD Θ with Φ = ½|z|²: k₁ = min Θ(z)/|z|²
        let m = crate::symbol::examples::fokker_planck_drift(0.5, 0.3);
        let w = Weight::standard(2);
        let k1 = k1_coefficient(&m, &w).unwrap();
        // Hermitian part of M has eigenvalues {0.3, 1.0}; Θ(z)/|z|² min = 2·0.3/2
        assert!((k1 - 0.3).abs() < 1e-10);
    }
}
