//! Labeled simple graphs on `{1..n}`, induced-pattern detection, and wheels.
//!
//! Every module shares one edge indexing: the `C(n,2)` slots are the pairs
//! `(i, j)` with `i < j`, ordered by `i` and then `j`, so for `n = 4` the
//! slots are `12, 13, 14, 23, 24, 34`.

mod labeled;
mod patterns;
mod wheel;

pub use labeled::{Edges, LabeledGraph};
pub use patterns::{
    has_cycle, has_induced_c5, has_induced_p4, is_claw_pattern, is_cograph,
    is_cograph_by_decomposition, is_p4_pattern, C5_PATTERNS, P4_PATTERNS,
};
pub use wheel::{
    coupled_spanning_trees, enumerate_wheels, is_coupled_spanning_tree, wheel_count, Wheel,
    WheelEdgeSet,
};

use crate::{Error, Result};

/// Largest supported vertex count; `C(12, 2) = 66` slots fit a `u128` mask.
pub const MAX_VERTICES: usize = 12;

/// Number of edge slots of `K_n`.
#[inline]
pub const fn slot_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Slot of the pair `{i, j}` (1-based, `i != j`) in the lexicographic order.
#[inline]
pub const fn slot_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// Inverse of [`slot_index`].
pub fn slot_pair(n: usize, slot: usize) -> (usize, usize) {
    let mut rest = slot;
    for i in 1..n {
        let row = n - i;
        if rest < row {
            return (i, i + 1 + rest);
        }
        rest -= row;
    }
    panic!("slot {slot} out of range for n = {n}");
}

pub(crate) fn check_vertex_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        Err(Error::VertexCount(n))
    } else {
        Ok(())
    }
}

/// A subset of `{1..=12}`; bit `v - 1` marks vertex `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u16) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    /// `{1..=n}`.
    pub const fn full(n: usize) -> Self {
        VertexSet(((1u32 << n) - 1) as u16)
    }

    /// Builds a set from 1-based vertex ids; ids outside `1..=n` are rejected.
    pub fn from_vertices(n: usize, vertices: &[usize]) -> Result<Self> {
        let mut bits = 0u16;
        for &v in vertices {
            if v == 0 || v > n || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & (1 << (v - 1)) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << (v - 1);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Largest member, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 16 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            (bits != 0).then(|| {
                let v = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                v
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_order_is_lexicographic() {
        let n = 5;
        let mut expected = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                assert_eq!(slot_index(n, i, j), expected);
                assert_eq!(slot_index(n, j, i), expected);
                assert_eq!(slot_pair(n, expected), (i, j));
                expected += 1;
            }
        }
        assert_eq!(expected, slot_count(n));
    }

    #[test]
    fn vertex_set_rejects_out_of_range() {
        assert!(VertexSet::from_vertices(4, &[1, 5]).is_err());
        assert!(VertexSet::from_vertices(4, &[0]).is_err());
        let s = VertexSet::from_vertices(6, &[2, 5, 6]).unwrap();
        assert_eq!(s.iter().collect::<std::vec::Vec<_>>(), [2, 5, 6]);
        assert_eq!(s.max(), Some(6));
    }
}
