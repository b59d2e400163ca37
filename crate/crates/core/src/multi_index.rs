use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::{binomial, factorial};

/// A tuple of `n` non-negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `|α|`
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &MultiIndex) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, defined only when the result stays non-negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn pointwise_min(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn pointwise_max(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn with_entry(&self, i: usize, value: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v[i] = value;
        MultiIndex(v)
    }

    /// `α! = Π αᵢ!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// `C(α, γ) = Π C(αᵢ, γᵢ)`
    pub fn binomial(&self, gamma: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&gamma.0)
            .fold(BigInt::one(), |acc, (&a, &g)| acc * binomial(a, g))
    }

    /// All `γ` with `0 ≤ γ ≤ bound` componentwise, in lexicographic order.
    pub fn boxed(bound: &MultiIndex) -> BoxIter {
        BoxIter {
            bound: bound.clone(),
            next: Some(MultiIndex::zeros(bound.len())),
        }
    }

    /// All multi-indices of length `n` with `|γ| ≤ d`, ordered by total degree then lexicographically.
    pub fn up_to_total(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> = Self::boxed(&MultiIndex(vec![d; n]))
            .filter(|g| g.total() <= d)
            .collect();
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[u32; N]> for MultiIndex {
    fn from(v: [u32; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl Index<usize> for MultiIndex {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Odometer over a box of multi-indices.
pub struct BoxIter {
    bound: MultiIndex,
    next: Option<MultiIndex>,
}

impl Iterator for BoxIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.0.clone();
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            if succ[pos] < self.bound.0[pos] {
                succ[pos] += 1;
                self.next = Some(MultiIndex(succ));
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumerates_product() {
        let all: Vec<_> = MultiIndex::boxed(&MultiIndex::from([1, 2])).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], MultiIndex::from([0, 0]));
        assert_eq!(all[5], MultiIndex::from([1, 2]));
        assert_eq!(MultiIndex::boxed(&MultiIndex::zeros(3)).count(), 1);
    }

    #[test]
    fn subtraction_only_when_nonnegative() {
        let a = MultiIndex::from([2, 1]);
        assert_eq!(a.checked_sub(&MultiIndex::from([1, 1])), Some(MultiIndex::from([1, 0])));
        assert_eq!(a.checked_sub(&MultiIndex::from([0, 2])), None);
    }

    #[test]
    fn up_to_total_counts() {
        // C(d + n, n)
        assert_eq!(MultiIndex::up_to_total(2, 4).len(), 15);
        assert_eq!(MultiIndex::up_to_total(4, 3).len(), 35);
        assert!(MultiIndex::up_to_total(2, 4)[0].is_zero());
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(MultiIndex::from([2, 3]).factorial(), BigInt::from(12));
        assert_eq!(MultiIndex::from([4, 2]).binomial(&MultiIndex::from([2, 1])), BigInt::from(12));
    }
}
