//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while validating inputs or factorizing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A 2x2 matrix failed the su(2) membership gate (skew-Hermitian, traceless).
    #[error(
        "matrix is not in su(2): skew residual {skew:.3e}, trace residual {trace:.3e} \
         (tolerance {tolerance:.1e})"
    )]
    NotInAlgebra {
        skew: f64,
        trace: f64,
        tolerance: f64,
    },

    /// A 2x2 matrix failed the SU(2) membership gate (unitary, unit determinant).
    #[error(
        "matrix is not in SU(2): unitarity residual {unitarity:.3e}, determinant residual \
         {determinant:.3e} (tolerance {tolerance:.1e})"
    )]
    NotUnitary {
        unitarity: f64,
        determinant: f64,
        tolerance: f64,
    },

    /// A 3x3 matrix failed the SO(3) membership gate (orthogonal, determinant +1).
    #[error(
        "matrix is not a rotation: orthogonality residual {orthogonality:.3e}, determinant \
         residual {determinant:.3e} (tolerance {tolerance:.1e})"
    )]
    NotARotation {
        orthogonality: f64,
        determinant: f64,
        tolerance: f64,
    },

    /// The two generators are linearly dependent; no decomposition basis exists.
    #[error(
        "generators are linearly dependent: |alpha x beta| = {cross_norm:.3e} is below the \
         independence gate"
    )]
    DependentGenerators { cross_norm: f64 },

    /// The canonical-frame mixing matrix is (numerically) rank deficient.
    #[error("mixing matrix is singular: |det| = {det:.3e}")]
    SingularMixing { det: f64 },

    /// A factor direction carries no first-generator component, so the sign
    /// condition on its leading coefficient cannot be met by rescaling.
    #[error(
        "factor direction is degenerate: |a| = {a_component:.3e} against coefficient scale \
         {scale:.3e}; re-choose the frame angle"
    )]
    DegenerateDirection { a_component: f64, scale: f64 },

    /// No angle on the frame-search grid avoids a degenerate factor direction.
    #[error("no frame angle on the search grid avoids a degenerate factor direction")]
    NoViableFrame,

    /// The coefficient bound must be a positive number.
    #[error("coefficient bound must be positive, got {value}")]
    InvalidBound { value: f64 },

    /// The reassembled product missed the target by more than the tolerance.
    #[error("reassembly residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    VerificationFailed { residual: f64, tolerance: f64 },
}
