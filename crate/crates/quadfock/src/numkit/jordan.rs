//! Numerical Jordan-structure probe: eigenvalue clustering plus a rank
//! staircase on powers of (A - λ) per cluster.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::cmatrix::CMatrix;
use super::schur;
use super::svd;
use crate::Result;

/// One eigenvalue cluster of a [`JordanProbe`].
#[derive(Debug, Clone)]
pub struct JordanCluster {
    pub value: Complex64,
    pub algebraic_multiplicity: usize,
    pub max_block_size: usize,
    /// Sizes of the individual Jordan blocks, descending.
    pub block_sizes: Vec<usize>,
}

/// Clustered eigenvalue and Jordan-block data of a matrix. Jordan detection
/// is discontinuous, so the clustering tolerance is recorded in the result
/// and surfaced by every downstream report.
#[derive(Debug, Clone)]
pub struct JordanProbe {
    pub clusters: Vec<JordanCluster>,
    pub tolerance: f64,
    /// Cluster pairs whose distance lies between the tolerance and 10x the
    /// tolerance: the clustering is reliable only up to this warning.
    pub borderline_pairs: Vec<(Complex64, Complex64, f64)>,
}

/// Default clustering tolerance: 1e-8 relative to the spectral scale with an
/// absolute floor of 1e-12.
pub fn default_cluster_tol(m: &CMatrix) -> f64 {
    (1e-8 * svd::spectral_norm(m)).max(1e-12)
}

impl JordanProbe {
    /// Eigenvalues repeated by algebraic multiplicity (cluster means).
    pub fn eigenvalues_with_multiplicity(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for c in &self.clusters {
            for _ in 0..c.algebraic_multiplicity {
                out.push(c.value);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.clusters.iter().map(|c| c.algebraic_multiplicity).sum()
    }

    pub fn has_warning(&self) -> bool {
        !self.borderline_pairs.is_empty()
    }
}

/// Clusters the eigenvalues of `m` within `tol` (absolute, callers usually
/// scale by ‖m‖) and reports per-cluster multiplicities and maximal Jordan
/// block sizes via the numerical rank staircase of (m − λ)^k.
pub fn jordan_probe(m: &CMatrix, tol: f64) -> Result<JordanProbe> {
    let n = m.require_square()?;
    let eigs = schur::eigenvalues(m)?;

    // transitive clustering: union of chains of eigenvalues within tol
    let mut assigned = vec![usize::MAX; n];
    let mut n_clusters = 0usize;
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        let cid = n_clusters;
        n_clusters += 1;
        assigned[i] = cid;
        let mut frontier = vec![i];
        while let Some(j) = frontier.pop() {
            for k in 0..n {
                if assigned[k] == usize::MAX && (eigs[j] - eigs[k]).norm() <= tol {
                    assigned[k] = cid;
                    frontier.push(k);
                }
            }
        }
    }

    let mut clusters = Vec::with_capacity(n_clusters);
    let scale = svd::spectral_norm(m).max(1e-300);
    for cid in 0..n_clusters {
        let members: Vec<Complex64> =
            (0..n).filter(|&i| assigned[i] == cid).map(|i| eigs[i]).collect();
        let mult = members.len();
        let mean = members.iter().sum::<Complex64>() / mult as f64;

        // rank staircase: rank (m - mean)^k for k = 1, 2, ... until the
        // kernel has swallowed the full algebraic multiplicity
        let shifted = m - &CMatrix::diag(&vec![mean; n]);
        let mut power = shifted.clone();
        let mut block_sizes = Vec::new();
        let mut prev_rank = n;
        let mut max_block = 1;
        // rank tolerance follows the clustering tolerance relative to the
        // spectral scale of the corresponding power
        let rank_rel_tol = (tol / scale).max(1e-12);
        for k in 1..=mult {
            let r = svd::rank(&power, rank_rel_tol * (k as f64))?;
            let r = r.min(prev_rank);
            let null_gain = prev_rank - r; // number of blocks of size >= k
            if k == 1 {
                for _ in 0..null_gain {
                    block_sizes.push(1usize);
                }
            } else {
                for b in block_sizes.iter_mut().take(null_gain) {
                    *b = k;
                }
            }
            if null_gain > 0 {
                max_block = k;
            }
            prev_rank = r;
            if n - r >= mult {
                break;
            }
            power = &power * &shifted;
        }
        block_sizes.sort_unstable_by(|a, b| b.cmp(a));
        clusters.push(JordanCluster {
            value: mean,
            algebraic_multiplicity: mult,
            max_block_size: max_block,
            block_sizes,
        });
    }
    clusters.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(core::cmp::Ordering::Equal)
    });

    let mut borderline_pairs = Vec::new();
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let d = (clusters[i].value - clusters[j].value).norm();
            if d > tol && d < 10.0 * tol {
                borderline_pairs.push((clusters[i].value, clusters[j].value, d));
            }
        }
    }

    Ok(JordanProbe { clusters, tolerance: tol, borderline_pairs })
}
