//! Dense complex linear-algebra kernels.
//!
//! Everything here is pure, allocates its outputs, and is safe to call
//! concurrently. Dense O(n³) algorithms are the contract; the intended
//! problem sizes stay below n ≈ 50.

pub mod cholesky;
pub mod cmatrix;
pub mod eigen;
pub mod expm;
pub mod jordan;
pub mod lu;
pub mod realsym;
pub mod schur;
pub mod svd;
pub mod takagi;

pub use cmatrix::{
    from_real_pair, to_real_pair, vec_bilinear, vec_dot, vec_norm, vec_scale, vec_sub, CMatrix,
};
pub use eigen::{herm_sqrt, hermitian_eigen, HermitianEigen};
pub use expm::expm;
pub use jordan::{default_cluster_tol, jordan_probe, JordanCluster, JordanProbe};
pub use lu::{det, inverse, lstsq, solve, Lu};
pub use realsym::{min_eigenpair, psd_classify, PsdClass, RealSymmetric};
pub use schur::{eigenvalues, Schur};
pub use svd::{nullspace, rank, spectral_norm, svd, Svd};
pub use takagi::{takagi, Takagi};
