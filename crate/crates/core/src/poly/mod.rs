//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are [`Rational`] (always in lowest terms, positive
//! denominator), monomials are keyed by [`MultiIndex`]. Term iteration order
//! is an implementation detail and never affects a result.

mod multi_index;
mod point;
mod polynomial;

pub use multi_index::MultiIndex;
pub use point::Point;
pub use polynomial::Polynomial;

/// Exact rational scalar: arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

use num_bigint::BigInt;

/// `n!` as a big integer.
pub(crate) fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::from(1u32);
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Rational from an integer, shorthand used all over the crate.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
