//! Error type shared by all exact-arithmetic modules.

use thiserror::Error;

/// Errors raised by the exact computational kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values that must live in the same ambient dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// The result would exceed [`crate::MAX_TOTAL_DEGREE`].
    #[error("operation would create a polynomial of total degree {degree}, above the cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    /// Truncation order is below the degree of the input polynomial.
    #[error("polynomial of degree {degree} does not fit below truncation order {order}")]
    DegreeAboveTruncation { degree: u32, order: u32 },
    /// Long division by the linear form left a nonzero remainder.
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    /// A direction vector required to be nonzero was zero.
    #[error("direction vector must be nonzero")]
    ZeroDirection,
    /// Requested root-system family/rank outside the supported table.
    #[error("unsupported root system {family}{rank}")]
    UnsupportedRootSystem { family: &'static str, rank: usize },
    /// Weyl group closure did not terminate within the element budget.
    #[error("Weyl group closure exceeded {limit} elements")]
    WeylClosureExceeded { limit: usize },
    /// The discriminant vanishes at the given point.
    #[error("singular point: the discriminant vanishes there")]
    SingularPoint,
    /// Type-A input points must have exactly zero coordinate sum.
    #[error("type A input must have zero coordinate sum (apply centering first)")]
    TraceNotZero,
    /// The polynomial is not alternating under the Weyl group.
    #[error("polynomial is not alternating")]
    NotAlternating,
    /// The polynomial is not invariant under the Weyl group.
    #[error("polynomial is not Weyl-symmetric")]
    NotSymmetric,
    /// Internal invariant violation: the signed average of translates of an
    /// alternating polynomial failed its symmetry assertion.
    #[error("internal error: averaged translate is not Weyl-symmetric")]
    AsymmetricAverage,
    /// Rank-1 density parameter was zero.
    #[error("rank-1 density parameter must be nonzero")]
    ZeroParameter,
    /// Rank-1 convolution density is only defined for 0 < b < a.
    #[error("rank-1 convolution density requires 0 < b < a")]
    OutsideRegime,
}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
