use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;

use super::factorial;

/// Exponent vector of a monomial; the length is the ambient dimension.
///
/// Equality and the derived (map-key) order are componentwise. The graded
/// lexicographic order used by polynomial long division is exposed
/// separately as [`MultiIndex::graded_lex_cmp`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The constant monomial exponent (all zeros).
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The exponent of the single variable `var` (0-based).
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Total degree `|β| = Σ βᵢ`.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise sum (monomial product).
    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_div(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// Copy with component `var` decremented; `None` if it is zero.
    pub fn step_down(&self, var: usize) -> Option<MultiIndex> {
        if self.0[var] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[var] -= 1;
        Some(MultiIndex(e))
    }

    /// Copy with component `var` replaced by `value`.
    pub fn with_exponent(&self, var: usize, value: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[var] = value;
        MultiIndex(e)
    }

    /// `β! = β₁!·β₂!⋯βₙ!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::from(1u32);
        for &e in &self.0 {
            acc *= factorial(e);
        }
        acc
    }

    /// Graded lexicographic order: compare total degree first, ties broken
    /// lexicographically on the exponent vector.
    pub fn graded_lex_cmp(&self, other: &MultiIndex) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_degree_sums_components() {
        assert_eq!(MultiIndex::new(vec![2, 0, 3]).total_degree(), 5);
        assert_eq!(MultiIndex::zero(4).total_degree(), 0);
    }

    #[test]
    fn factorial_is_componentwise() {
        // (3,2)! = 3!·2! = 12
        assert_eq!(MultiIndex::new(vec![3, 2]).factorial(), BigInt::from(12));
        assert_eq!(MultiIndex::zero(3).factorial(), BigInt::from(1));
    }

    #[test]
    fn graded_lex_ranks_by_degree_first() {
        let a = MultiIndex::new(vec![0, 3]);
        let b = MultiIndex::new(vec![2, 0]);
        assert_eq!(a.graded_lex_cmp(&b), Ordering::Greater);
        // same degree: lexicographic on the vector
        let c = MultiIndex::new(vec![2, 1]);
        let d = MultiIndex::new(vec![1, 2]);
        assert_eq!(c.graded_lex_cmp(&d), Ordering::Greater);
    }

    #[test]
    fn checked_div_detects_non_divisibility() {
        let a = MultiIndex::new(vec![2, 1]);
        let b = MultiIndex::new(vec![1, 0]);
        assert_eq!(a.checked_div(&b), Some(MultiIndex::new(vec![1, 1])));
        assert_eq!(b.checked_div(&a), None);
    }
}
