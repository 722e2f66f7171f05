//! Crate-wide error type.

use alloc::string::String;
use core::fmt;
use num_complex::Complex64;

/// Errors produced by the analysis pipeline.
///
/// Variants are grouped by how a caller should react: [`Error::is_hypothesis`]
/// marks inputs outside the theory's scope (the operator has no normal form,
/// or a theorem's hypothesis fails), while [`Error::is_numerical`] marks
/// breakdowns of the numerics themselves.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Dimensions of the operands do not match.
    ShapeMismatch { expected: (usize, usize), got: (usize, usize) },
    /// A matrix entry is NaN or infinite.
    NonFinite,
    /// Input violates a structural requirement (Hermitian, symmetric, ...).
    NotHermitian,
    /// Input violates complex symmetry (A = Aᵀ).
    NotSymmetric,
    /// Matrix expected positive (semi)definite; the offending eigenvalue is reported.
    NotPositiveDefinite { eigenvalue: f64 },
    /// Matrix exponential overflowed the representable range.
    Overflow,
    /// A matrix required to be invertible is numerically singular.
    Singular,
    /// An iterative eigenvalue or factorization routine failed to converge.
    NoConvergence(&'static str),
    /// An eigenvalue of the fundamental matrix sits too close to the real
    /// axis, so the Λ± splitting is ill-defined.
    DegenerateSplit { eigenvalue: Complex64 },
    /// The stable planes do not have complementary dimension n.
    BadSplitDimension { dim_plus: usize, dim_minus: usize },
    /// A Lagrangian plane is not a graph over the base variables.
    NotAGraph,
    /// The candidate Lagrangian planes are not sign-definite, so the symbol
    /// admits no supersymmetric factorization and is outside scope.
    PlanesNotDefinite,
    /// The reduction produced a weight that is not strictly convex.
    NonConvexWeight,
    /// The ellipticity form Θ is indefinite, so an index or slope requiring
    /// Θ ≥ 0 is undefined.
    ThetaIndefinite,
    /// The real part of the symbol is not positive semidefinite.
    RealPartNotPsd,
    /// The requested quantity needs Spec M in the open right half-plane.
    SpectrumNotInRightHalfPlane,
    /// The escape index is infinite; the requested coefficient is undefined.
    InfiniteIndex,
    /// δ₀ bisection could not bracket the predicate boundary.
    BracketingFailure,
    /// The solution operator is unbounded at the requested time.
    UnboundedAtTime,
    /// Requested polynomial degree exceeds the cost guard.
    DegreeGuard { requested: usize, max: usize },
    /// Free-form invalid argument.
    InvalidArgument(String),
}

impl Error {
    /// True when the input operator violates a structural hypothesis
    /// (no normal form, indefinite Θ, spectrum in the wrong half-plane, ...).
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSplit { .. }
                | Error::BadSplitDimension { .. }
                | Error::NotAGraph
                | Error::PlanesNotDefinite
                | Error::NonConvexWeight
                | Error::ThetaIndefinite
                | Error::RealPartNotPsd
                | Error::SpectrumNotInRightHalfPlane
                | Error::InfiniteIndex
                | Error::UnboundedAtTime
        )
    }

    /// True when the numerics themselves broke down.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Overflow
                | Error::Singular
                | Error::NoConvergence(_)
                | Error::BracketingFailure
                | Error::NotPositiveDefinite { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::NonFinite => write!(f, "matrix contains NaN or infinite entries"),
            Error::NotHermitian => write!(f, "matrix is not Hermitian"),
            Error::NotSymmetric => write!(f, "matrix is not complex symmetric"),
            Error::NotPositiveDefinite { eigenvalue } => {
                write!(f, "matrix is not positive definite: eigenvalue {eigenvalue:e}")
            }
            Error::Overflow => write!(f, "matrix exponential overflowed"),
            Error::Singular => write!(f, "matrix is numerically singular"),
            Error::NoConvergence(what) => write!(f, "{what} failed to converge"),
            Error::DegenerateSplit { eigenvalue } => write!(
                f,
                "degenerate split: eigenvalue {} + {}i of the fundamental matrix is too close to the real axis",
                eigenvalue.re, eigenvalue.im
            ),
            Error::BadSplitDimension { dim_plus, dim_minus } => write!(
                f,
                "stable planes have dimensions ({dim_plus}, {dim_minus}); expected (n, n)"
            ),
            Error::NotAGraph => write!(f, "plane not a graph over base"),
            Error::PlanesNotDefinite => write!(
                f,
                "invariant Lagrangian planes are not sign-definite: the operator admits no supersymmetric factorization"
            ),
            Error::NonConvexWeight => write!(f, "reduction produced non-convex weight"),
            Error::ThetaIndefinite => write!(f, "ellipticity form of the weight is indefinite"),
            Error::RealPartNotPsd => write!(f, "real part of the symbol is not positive semidefinite"),
            Error::SpectrumNotInRightHalfPlane => {
                write!(f, "Spec M is not contained in the open right half-plane")
            }
            Error::InfiniteIndex => write!(f, "escape index is infinite"),
            Error::BracketingFailure => write!(f, "bisection failed to bracket the boundary"),
            Error::UnboundedAtTime => write!(f, "solution operator is unbounded at the requested time"),
            Error::DegreeGuard { requested, max } => {
                write!(f, "degree {requested} exceeds the cost guard {max}")
            }
            Error::InvalidArgument(msg) => write!(f, "{msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
