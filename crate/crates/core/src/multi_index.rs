//! Multi-indices α ∈ ℕⁿ: exponent tuples for ladder operators and monomials.

use crate::special::factorial_big;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A tuple of nonnegative integer exponents, one per complex coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// |α| = Σ αⱼ.
    pub fn order(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// α! = Π αⱼ! in arbitrary precision.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            acc *= factorial_big(e as u64);
        }
        acc
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Bump coordinate j by one.
    pub fn raised(&self, j: usize) -> Self {
        let mut v = self.0.clone();
        v[j] += 1;
        Self(v)
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All multi-indices of length `n` with |α| = k, in lexicographic order.
pub fn compositions(n: usize, k: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill(&mut out, &mut cur, 0, k);
    out
}

fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex::new(cur.clone()));
        return;
    }
    for take in 0..=left {
        cur[pos] = take;
        fill(out, cur, pos + 1, left - take);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::binomial_big;
    use num_traits::ToPrimitive;

    #[test]
    fn factorials() {
        assert_eq!(
            MultiIndex::new(vec![3, 2, 0]).factorial(),
            BigInt::from(12u32)
        );
        assert_eq!(MultiIndex::zeros(4).factorial(), BigInt::one());
        assert_eq!(MultiIndex::new(vec![3, 2]).order(), 5);
    }

    #[test]
    fn composition_counts_are_stars_and_bars() {
        for n in 1..=4usize {
            for k in 0..=6u32 {
                let count = compositions(n, k).len();
                let expect = binomial_big((n as u64) + (k as u64) - 1, k as u64)
                    .to_usize()
                    .unwrap();
                assert_eq!(count, expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn compositions_ordered_and_distinct() {
        let cs = compositions(3, 4);
        let mut sorted = cs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), cs.len());
        assert!(cs.iter().all(|c| c.order() == 4));
    }
}
