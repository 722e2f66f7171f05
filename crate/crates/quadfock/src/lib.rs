//! Spectral-theoretic analysis of quadratic evolution generators.
//!
//! A quadratic symbol q(x, ξ) on phase space R^{2n} that factors through a
//! pair of sign-definite Lagrangian planes is unitarily equivalent to the
//! first-order operator P = Mz·∂z acting on a Fock space H_Φ of entire
//! functions weighted by a strictly convex real-quadratic form Φ. On that
//! normal form the solution operator exp(τP) is an explicit change of
//! variables, and questions about boundedness, compactness, regularization,
//! and return to equilibrium reduce to finite-dimensional matrix criteria.
//!
//! The crate is organized along that pipeline:
//!
//! * [`numkit`] — dense complex linear-algebra kernels (matrix exponential,
//!   Hermitian square root, Takagi factorization, Schur form, tolerance-aware
//!   PSD tests, Jordan-structure probe);
//! * [`symbol`] — the real-side symbol, its fundamental matrix, Poisson
//!   brackets, and the bracket/index diagnostics;
//! * [`reduction`] — stable Lagrangian planes, the supersymmetric
//!   factorization, and the canonical map onto the normal form (M, Φ);
//! * [`weight`] — everything derived from Φ alone or from (M, Φ): the
//!   Hermitian/pluriharmonic split, Δ₀, shifted weights, Θ, escape indices;
//! * [`semigroup`] — τ-dependent classification of exp(τP), δ₀(τ), region
//!   scans, eigenvalue lattices, and return rates;
//! * [`polyoracle`] — an independent brute-force verification layer built on
//!   Gram matrices of monomials computed by Gaussian moment pairing.
//!
//! The library core is `no_std`-compatible (requires `alloc`); the `std`
//! feature (default) is only needed for `std::error::Error` integration, and
//! `parallel` enables a rayon-backed region scan.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod numkit;
pub mod polyoracle;
pub mod reduction;
pub mod semigroup;
pub mod symbol;
pub mod weight;

pub use error::Error;
pub use numkit::{CMatrix, JordanProbe, PsdClass, RealSymmetric};
pub use reduction::{NormalForm, SupersymmetricForm};
pub use semigroup::{ClassificationReport, RegionGrid, ReturnRates, Verdict};
pub use symbol::{FundamentalMatrix, QuadraticSymbol};
pub use weight::Weight;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
