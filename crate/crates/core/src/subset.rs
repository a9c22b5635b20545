//! Vertex subsets of `[n]` encoded as bitmasks.
//!
//! Vertex `i` (1-based) occupies bit `i - 1`. Up to 128 vertices are
//! representable, which covers the flattened permutohedral complexes
//! (`2^7 - 2 = 126` vertices for n = 7).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSubset(pub u128);

impl VertexSubset {
    pub const EMPTY: VertexSubset = VertexSubset(0);

    /// `[n] = {1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSubset(u128::MAX)
        } else {
            VertexSubset((1u128 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&v),
            "vertex {v} not representable"
        );
        VertexSubset(1u128 << (v - 1))
    }

    /// Builds a subset from 1-based labels, checking them against `[n]`.
    pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut mask = 0u128;
        for &v in vertices {
            if v == 0 || v > n || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            mask |= 1u128 << (v - 1);
        }
        Ok(VertexSubset(mask))
    }

    /// Unchecked construction from labels; panics on label 0 or > 128.
    pub fn of(vertices: &[usize]) -> Self {
        vertices
            .iter()
            .fold(Self::EMPTY, |acc, &v| acc | Self::singleton(v))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1u128 << (v - 1)) != 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSubset(self.0 & !other.0)
    }

    pub fn insert(self, v: usize) -> Self {
        self | Self::singleton(v)
    }

    pub fn remove(self, v: usize) -> Self {
        self.difference(Self::singleton(v))
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(128 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of members strictly smaller than `v`.
    pub fn rank_of(self, v: usize) -> usize {
        debug_assert!(v >= 1);
        let below = if v - 1 >= 128 {
            u128::MAX
        } else {
            (1u128 << (v - 1)) - 1
        };
        (self.0 & below).count_ones() as usize
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

/// Sign of the permutation sorting the concatenation `(a, b)` of two
/// disjoint ascending lists: `(-1)^{#{(x, y) in a x b : x > y}}`.
pub fn shuffle_sign(a: VertexSubset, b: VertexSubset) -> i64 {
    debug_assert!(a.is_disjoint(b));
    let inversions: usize = b.iter().map(|y| a.len() - a.rank_of(y)).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub struct Members(u128);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Members {}

pub struct Subsets {
    mask: u128,
    next: Option<u128>,
}

impl Iterator for Subsets {
    type Item = VertexSubset;

    fn next(&mut self) -> Option<VertexSubset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(VertexSubset(cur))
    }
}

impl std::ops::BitOr for VertexSubset {
    type Output = Self;
    fn bitor(self, rhs: Self) -> Self {
        VertexSubset(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSubset {
    type Output = Self;
    fn bitand(self, rhs: Self) -> Self {
        VertexSubset(self.0 & rhs.0)
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
