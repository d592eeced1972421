use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::{rat_int, Rational};

/// Exact rational vector in the ambient Cartan realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    /// Point with integer coordinates, convenient in tests and tables.
    pub fn from_integers(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Euclidean pairing `Σ aᵢ bᵢ` in the ambient coordinates.
    pub fn dot(&self, other: &Point) -> Result<Rational> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// Sum of the coordinates (the "trace" of a type-A diagonal point).
    pub fn coordinate_sum(&self) -> Rational {
        self.0.iter().sum()
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Point(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Subtract the coordinate mean, landing on the sum-zero hyperplane.
    pub fn centered(&self) -> Point {
        let mean = self.coordinate_sum() / rat_int(self.dim() as i64);
        Point(self.0.iter().map(|c| c - &mean).collect())
    }
}

impl fmt::Display for Point {
    /// Comma-separated rationals, matching the CLI input syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
