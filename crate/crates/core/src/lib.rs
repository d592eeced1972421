//! Exact-arithmetic toolkit for projected orbital measures and radial
//! convolutions on compact semisimple Lie groups.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! there is no floating point on any computational path (the only `f64` is
//! the decimal rendering attached to a [`measures::MomentResult`]).
//!
//! The crate is organised in four layers:
//!
//! - [`poly`]: sparse multivariate polynomials with the apolar inner product
//!   and the elementary operators (evaluation, translation, truncation,
//!   directional derivative, truncated multiplication).
//! - [`root_system`]: rational realizations of the root systems A, B, C, D
//!   and G2 at small rank, with the full Weyl group, the discriminant and
//!   its apolar Gram constant.
//! - [`operators`]: truncated exponential kernels, alternating kernels,
//!   adjoint translation, division and anti-derivative along a root, and
//!   their discriminant-level compositions.
//! - [`measures`]: exact moment functionals for the projection of an
//!   orbital measure to the Cartan algebra and for the radial part of a
//!   convolution of two orbital measures, plus the rank-1 closed-form
//!   densities.
//!
//! The crate is `no_std` (with `alloc`) so the algebraic kernel can be
//! embedded anywhere; IO, parsing and the Monte-Carlo verification oracle
//! live in the companion `orbmeas` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod measures;
pub mod operators;
pub mod poly;
pub mod root_system;

pub use error::Error;
pub use poly::{MultiIndex, Point, Polynomial, Rational};
pub use root_system::{Family, RootSystem, WeylElement};

/// Hard ceiling on the total degree any operation is allowed to produce.
///
/// The practical test surface stays below degree 16; the cap only guards
/// against accidental blowup (e.g. runaway exponents coming in over the CLI).
pub const MAX_TOTAL_DEGREE: u32 = 64;
