//! Monte-Carlo oracle for the unitary case.
//!
//! Everything exact lives in `orbmeas-core`; this module provides the
//! floating-point counterpart used for end-to-end verification: Haar
//! unitaries via Householder QR, a Jacobi eigensolver, and threaded
//! moment estimators with deterministic per-chunk sampling.

pub mod cmatrix;
pub mod eigen;
pub mod mc;
pub mod rng;

pub use cmatrix::{ginibre, haar_unitary, CMatrix};
pub use eigen::hermitian_eigenvalues;
pub use mc::{
    compare_estimate, mc_convolution_moment, mc_convolution_moments, mc_projection_moment,
    mc_projection_moments, ComparisonReport, McEstimate,
};
pub use rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("matrix dimension {n} outside the supported range 2..=8")]
    UnsupportedSize { n: usize },
    #[error("point dimension {found} does not match matrix dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial has {found} variables, expected {expected}")]
    PolynomialArity { expected: usize, found: usize },
    #[error("sample count must be at least 2")]
    TooFewSamples,
    #[error("input point is not trace-zero")]
    NotTraceZero,
    #[error("polynomial is not exchange-symmetric on the trace-zero hyperplane")]
    NotSymmetric,
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NonHermitian { defect: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}
