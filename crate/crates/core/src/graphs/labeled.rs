use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use super::{check_vertex_count, slot_count, slot_index, slot_pair, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// A simple graph on `{1..n}` stored as a bitmask over the edge slots:
/// bit `s` is set iff the pair in slot `s` is an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: u8,
    edges: u128,
}

impl LabeledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(LabeledGraph {
            n: n as u8,
            edges: 0,
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_vertex_count(n)?;
        Ok(LabeledGraph {
            n: n as u8,
            edges: full_mask(n),
        })
    }

    /// Graph whose edge mask is `bits`; bits past the last slot are rejected.
    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        check_vertex_count(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::WeightingLength {
                expected: slot_count(n),
                found: 128 - bits.leading_zeros() as usize,
            });
        }
        Ok(LabeledGraph {
            n: n as u8,
            edges: bits,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(i, j) in edges {
            g.insert_edge(i, j)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.edges
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        let n = self.n();
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if i == j {
            return Err(Error::VertexOutOfRange { vertex: i, n });
        }
        Ok(())
    }

    /// Adds the edge `ij`; self-loops and out-of-range ids are rejected.
    pub fn insert_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_pair(i, j)?;
        self.edges |= 1 << slot_index(self.n(), i, j);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_pair(i, j)?;
        self.edges &= !(1 << slot_index(self.n(), i, j));
        Ok(())
    }

    /// `false` for loops and out-of-range pairs.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let n = self.n();
        i != j
            && (1..=n).contains(&i)
            && (1..=n).contains(&j)
            && self.edges & (1 << slot_index(n, i, j)) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    /// Edges `(i, j)` with `i < j` in slot order.
    pub fn edges(&self) -> Edges {
        Edges {
            n: self.n(),
            bits: self.edges,
        }
    }

    pub fn complement(&self) -> Self {
        LabeledGraph {
            n: self.n,
            edges: !self.edges & full_mask(self.n()),
        }
    }

    /// Edge-set intersection of two graphs on the same vertex set.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(LabeledGraph {
            n: self.n,
            edges: self.edges & other.edges,
        })
    }

    /// Neighbourhood of `v`.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        let mut set = VertexSet::EMPTY;
        for u in 1..=self.n() {
            if self.has_edge(u, v) {
                set.insert(u);
            }
        }
        set
    }

    /// Adjacency rows: bit `u - 1` of `rows[v - 1]` marks the edge `uv`.
    pub fn adjacency(&self) -> [u16; MAX_VERTICES] {
        let mut rows = [0u16; MAX_VERTICES];
        for (i, j) in self.edges() {
            rows[i - 1] |= 1 << (j - 1);
            rows[j - 1] |= 1 << (i - 1);
        }
        rows
    }

    /// The subgraph induced on `vertices`, relabeled to `1..=|U|` in
    /// increasing order of the original ids.
    pub fn induced_subgraph(&self, vertices: VertexSet) -> Result<Self> {
        let n = self.n();
        if let Some(v) = vertices.max().filter(|&v| v > n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let kept: Vec<usize> = vertices.iter().collect();
        let mut sub = Self::new(kept.len())?;
        for (a, &u) in kept.iter().enumerate() {
            for (b, &v) in kept.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sub.edges |= 1 << slot_index(sub.n(), a + 1, b + 1);
                }
            }
        }
        Ok(sub)
    }

    /// The same graph with a new isolated vertex `n + 1`.
    pub fn with_isolated_vertex(&self) -> Result<Self> {
        let mut g = Self::new(self.n() + 1)?;
        for (i, j) in self.edges() {
            g.edges |= 1 << slot_index(g.n(), i, j);
        }
        Ok(g)
    }

    /// The subgraph induced on `{1..n-1}`.
    pub fn without_last_vertex(&self) -> Result<Self> {
        self.induced_subgraph(VertexSet::full(self.n() - 1))
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        components_of(&self.adjacency(), within.bits())
            .into_iter()
            .map(VertexSet::from_bits)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components(VertexSet::full(self.n())).len() == 1
    }
}

/// Components of the graph given by adjacency `rows` restricted to `within`.
pub(crate) fn components_of(rows: &[u16; MAX_VERTICES], within: u16) -> Vec<u16> {
    let mut out = Vec::new();
    let mut left = within;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = rows[v] & within & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

#[inline]
fn full_mask(n: usize) -> u128 {
    let slots = slot_count(n);
    if slots == 128 {
        u128::MAX
    } else {
        (1u128 << slots) - 1
    }
}

pub struct Edges {
    n: usize,
    bits: u128,
}

impl Iterator for Edges {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.bits == 0 {
            return None;
        }
        let slot = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(slot_pair(self.n, slot))
    }
}

/// Graph literal `n:EdgeList`, e.g. `5:12,15,23,34,45`. Edge tokens are two
/// concatenated digits when `n <= 9` and `i-j` otherwise.
impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_char(',')?;
            }
            if self.n <= 9 {
                write!(f, "{i}{j}")?;
            } else {
                write!(f, "{i}-{j}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LabeledGraph {
    type Err = Error;

    /// Accepts `ij` tokens (for `n <= 9`) and `i-j` tokens; whitespace around
    /// tokens is ignored and the edge list may be empty.
    fn from_str(s: &str) -> Result<Self> {
        let (head, list) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, "expected `n:EdgeList`"))?;
        let n: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, "vertex count is not an integer"))?;
        check_vertex_count(n).map_err(|e| Error::parse(0, render(&e)))?;
        let mut g = Self::new(n)?;
        let mut offset = head.len() + 1;
        for token in list.split(',') {
            let start = offset + (token.len() - token.trim_start().len());
            offset += token.len() + 1;
            let token = token.trim();
            if token.is_empty() {
                if list.trim().is_empty() {
                    continue;
                }
                return Err(Error::parse(start, "empty edge token"));
            }
            let (i, j) = parse_edge_token(token, n).map_err(|m| Error::parse(start, m))?;
            g.insert_edge(i, j)
                .map_err(|e| Error::parse(start, render(&e)))?;
        }
        Ok(g)
    }
}

fn parse_edge_token(token: &str, n: usize) -> core::result::Result<(usize, usize), String> {
    if let Some((a, b)) = token.split_once('-') {
        let i = a.parse().map_err(|_| format_owned("bad vertex id", a))?;
        let j = b.parse().map_err(|_| format_owned("bad vertex id", b))?;
        return Ok((i, j));
    }
    let digits: Vec<u32> = token.chars().filter_map(|c| c.to_digit(10)).collect();
    if n > 9 || token.len() != 2 || digits.len() != 2 {
        return Err(format_owned(
            "edge token must be two digits or `i-j`",
            token,
        ));
    }
    Ok((digits[0] as usize, digits[1] as usize))
}

fn format_owned(what: &str, token: &str) -> String {
    let mut s = String::new();
    let _ = write!(s, "{what}: `{token}`");
    s
}

fn render(e: &Error) -> String {
    let mut s = String::new();
    let _ = write!(s, "{e}");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::string::ToString;
    use std::vec;

    fn g(s: &str) -> LabeledGraph {
        s.parse().unwrap()
    }

    #[test]
    fn induced_subgraph_of_c5_drops_to_p4() {
        let c5 = g("5:12,23,34,45,15");
        let u = VertexSet::from_vertices(5, &[1, 2, 3, 4]).unwrap();
        assert_eq!(c5.induced_subgraph(u).unwrap(), g("4:12,23,34"));
    }

    #[test]
    fn induced_subgraph_identity_and_clique() {
        let c5 = g("5:12,23,34,45,15");
        assert_eq!(c5.induced_subgraph(VertexSet::full(5)).unwrap(), c5);
        let k4 = LabeledGraph::complete(4).unwrap();
        let u = VertexSet::from_vertices(4, &[1, 2, 3]).unwrap();
        assert_eq!(
            k4.induced_subgraph(u).unwrap(),
            LabeledGraph::complete(3).unwrap()
        );
    }

    #[test]
    fn induced_subgraph_relabels_in_order() {
        let p = g("6:26,56");
        let u = VertexSet::from_vertices(6, &[2, 5, 6]).unwrap();
        assert_eq!(p.induced_subgraph(u).unwrap(), g("3:13,23"));
    }

    #[test]
    fn induced_subgraph_rejects_foreign_vertex() {
        let k4 = LabeledGraph::complete(4).unwrap();
        let u = VertexSet::from_vertices(6, &[1, 6]).unwrap();
        assert_eq!(
            k4.induced_subgraph(u),
            Err(Error::VertexOutOfRange { vertex: 6, n: 4 })
        );
    }

    #[test]
    fn complement_is_involution() {
        for bits in 0..64u128 {
            let h = LabeledGraph::from_bits(4, bits).unwrap();
            assert_eq!(h.complement().complement(), h);
            assert_eq!(h.complement().edge_count(), 6 - h.edge_count());
        }
    }

    #[test]
    fn intersect_requires_same_order() {
        let a = LabeledGraph::complete(4).unwrap();
        let b = LabeledGraph::complete(5).unwrap();
        assert!(a.intersect(&b).is_err());
        assert_eq!(a.intersect(&g("4:12,34")).unwrap(), g("4:12,34"));
    }

    #[test]
    fn literal_round_trip() {
        let c5 = g("5:12,23,34,45,15");
        assert_eq!(c5.to_string(), "5:12,15,23,34,45");
        assert_eq!(g("3:").edge_count(), 0);
        let big = g("11:1-11,3-10");
        assert_eq!(big.to_string(), "11:1-11,3-10");
        assert_eq!(big.to_string().parse::<LabeledGraph>().unwrap(), big);
    }

    #[test]
    fn literal_errors_name_the_position() {
        assert!(matches!(
            "4:12,15".parse::<LabeledGraph>(),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!(matches!(
            "4:12,,23".parse::<LabeledGraph>(),
            Err(Error::Parse { position: 5, .. })
        ));
        assert!("4:11".parse::<LabeledGraph>().is_err());
        assert!("x:12".parse::<LabeledGraph>().is_err());
        assert!("13:".parse::<LabeledGraph>().is_err());
        assert!("12".parse::<LabeledGraph>().is_err());
    }

    #[test]
    fn components_and_connectivity() {
        let h = g("5:12,34,45");
        assert_eq!(h.components(VertexSet::full(5)).len(), 2);
        assert!(!h.is_connected());
        assert!(g("5:12,23,34,45").is_connected());
        assert_eq!(
            h.neighbors(4),
            VertexSet::from_vertices(5, &[3, 5]).unwrap()
        );
    }

    #[test]
    fn isolated_vertex_round_trip() {
        let h = g("4:12,24");
        let up = h.with_isolated_vertex().unwrap();
        assert_eq!(up.n(), 5);
        assert_eq!(up.neighbors(5), VertexSet::EMPTY);
        assert_eq!(up.without_last_vertex().unwrap(), h);
        assert_eq!(
            up.edges().collect::<std::vec::Vec<_>>(),
            vec![(1, 2), (2, 4)]
        );
    }
}
