//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("algebra tag mismatch: {0:?} vs {1:?}")]
    TagMismatch(crate::algebra::Algebra, crate::algebra::Algebra),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("metric signature mismatch: {0:?} vs {1:?}")]
    SignatureMismatch(crate::lie::Sig, crate::lie::Sig),
    #[error("matrix is not eta-skew-adjoint (residual {residual:.3e})")]
    NotSkewAdjoint { residual: f64 },
    #[error("matrix is not in the isometry group (residual {residual:.3e}, det {det:.6})")]
    NotGroupElement { residual: f64, det: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MomentError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("point is irregular: |(Ad_g^-1 v)_m| = {m_norm:.3e} <= tol {tol:.3e}")]
    IrregularPoint { m_norm: f64, tol: f64 },
    #[error("action generator must be nonzero")]
    ZeroGenerator,
    #[error("vector must satisfy |x|_V in {{1, -1, 0}}, got {0}")]
    NotNormalized(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbitError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("ill-conditioned input: eigenvalue clusters separated by {gap:.3e} (< 10 x tol scale {limit:.3e})")]
    IllConditioned { gap: f64, limit: f64 },
    #[error("inconsistent spectral structure: {0}")]
    SpectralStructure(String),
    #[error("type sum matches no family in the table: {0}")]
    NoFamilyMatch(String),
    #[error("inadmissible parameters for {kind}: {reason}")]
    InadmissibleParams { kind: String, reason: String },
    #[error("type sum has dimension {dim} and signature ({p},{q}); expected 7 and (3,4)")]
    BadTypeSum { dim: usize, p: usize, q: usize },
}
