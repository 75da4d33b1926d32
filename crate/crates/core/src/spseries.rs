//! Cotrees and labeled-cograph counts (OEIS A006351), which also count
//! labeled series-parallel networks.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graphs::{LabeledGraph, VertexSet, MAX_VERTICES};
use crate::{Error, Result};

/// Largest `n` accepted by the subset recursion.
pub const MAX_COUNT_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Union,
    Join,
}

impl NodeKind {
    pub fn opposite(self) -> Self {
        match self {
            NodeKind::Union => NodeKind::Join,
            NodeKind::Join => NodeKind::Union,
        }
    }
}

/// A cotree: leaves are vertex labels, internal nodes take the disjoint
/// union or the join of their children. Canonical cotrees have at least two
/// children per internal node and alternate kinds along every path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cotree {
    Leaf(u8),
    Node(NodeKind, Vec<Cotree>),
}

impl Cotree {
    pub fn leaf(v: usize) -> Self {
        Cotree::Leaf(v as u8)
    }

    pub fn union(children: Vec<Cotree>) -> Self {
        Cotree::Node(NodeKind::Union, children)
    }

    pub fn join(children: Vec<Cotree>) -> Self {
        Cotree::Node(NodeKind::Join, children)
    }

    pub fn kind(&self) -> Option<NodeKind> {
        match self {
            Cotree::Leaf(_) => None,
            Cotree::Node(k, _) => Some(*k),
        }
    }

    /// Leaf labels, checking that none repeats.
    fn leaves(&self, into: &mut VertexSet) -> Result<()> {
        match self {
            Cotree::Leaf(v) => {
                let v = *v as usize;
                if v == 0 || v > MAX_VERTICES {
                    return Err(Error::MalformedCotree("leaf label outside 1..=12"));
                }
                if into.contains(v) {
                    return Err(Error::MalformedCotree("repeated leaf label"));
                }
                into.insert(v);
                Ok(())
            }
            Cotree::Node(kind, children) => {
                if children.len() < 2 {
                    return Err(Error::MalformedCotree(
                        "internal node with fewer than 2 children",
                    ));
                }
                for c in children {
                    if c.kind() == Some(*kind) {
                        return Err(Error::MalformedCotree(
                            "child has the same kind as its parent",
                        ));
                    }
                    c.leaves(into)?;
                }
                Ok(())
            }
        }
    }

    /// Checks canonical form and that the leaves are exactly `{1..n}`;
    /// returns `n`.
    pub fn validate(&self) -> Result<usize> {
        let mut seen = VertexSet::EMPTY;
        self.leaves(&mut seen)?;
        let n = seen.len();
        if seen != VertexSet::full(n) {
            return Err(Error::MalformedCotree("leaf labels are not 1..n"));
        }
        Ok(n)
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cotree::Leaf(v) => write!(f, "{v}"),
            Cotree::Node(kind, children) => {
                f.write_str(match kind {
                    NodeKind::Union => "U(",
                    NodeKind::Join => "J(",
                })?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    c.fmt(f)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// The graph a cotree encodes. Fails on non-canonical trees.
pub fn cotree_to_graph(tree: &Cotree) -> Result<LabeledGraph> {
    let n = tree.validate()?;
    let mut g = LabeledGraph::new(n)?;
    fn build(t: &Cotree, g: &mut LabeledGraph) -> Result<VertexSet> {
        match t {
            Cotree::Leaf(v) => Ok(VertexSet::from_bits(1 << (*v - 1))),
            Cotree::Node(kind, children) => {
                let mut all = VertexSet::EMPTY;
                for c in children {
                    let part = build(c, g)?;
                    if *kind == NodeKind::Join {
                        for u in all.iter() {
                            for v in part.iter() {
                                g.insert_edge(u, v)?;
                            }
                        }
                    }
                    all = VertexSet::from_bits(all.bits() | part.bits());
                }
                Ok(all)
            }
        }
    }
    build(tree, &mut g)?;
    Ok(g)
}

/// Every canonical cotree on leaves `{1..n}`.
pub fn all_cotrees(n: usize) -> Result<Vec<Cotree>> {
    if n == 0 || n > MAX_COUNT_N {
        return Err(Error::VertexCount(n));
    }
    let full = VertexSet::full(n).bits();
    let mut out = trees_not_rooted_at(full, NodeKind::Union);
    if n > 1 {
        out.extend(trees_not_rooted_at(full, NodeKind::Join));
        // Leaf-rooted trees were produced by both calls only for n = 1.
    }
    Ok(out)
}

/// Canonical cotrees on `set` whose root is a leaf or has kind `!banned`.
fn trees_not_rooted_at(set: u16, banned: NodeKind) -> Vec<Cotree> {
    if set.count_ones() == 1 {
        return vec![Cotree::Leaf(set.trailing_zeros() as u8 + 1)];
    }
    let kind = banned.opposite();
    let mut out = Vec::new();
    for blocks in set_partitions(set).into_iter().filter(|b| b.len() >= 2) {
        let mut partial: Vec<Vec<Cotree>> = vec![Vec::new()];
        for &block in &blocks {
            let options = trees_not_rooted_at(block, kind);
            partial = partial
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |t| {
                        let mut next = prefix.clone();
                        next.push(t.clone());
                        next
                    })
                })
                .collect();
        }
        out.extend(
            partial
                .into_iter()
                .map(|children| Cotree::Node(kind, children)),
        );
    }
    out
}

/// Set partitions of `set`, blocks listed by their least element.
fn set_partitions(set: u16) -> Vec<Vec<u16>> {
    if set == 0 {
        return vec![Vec::new()];
    }
    let low = set & set.wrapping_neg();
    let rest = set & !low;
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut tail in set_partitions(rest & !sub) {
            tail.insert(0, block);
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Number of labeled cographs on `{1..n}`, via canonical cotrees.
///
/// With `rooted(S)` the number of cotrees on `S` whose root is a union node
/// (equal, by complementation, to those with a join root), and `free(S)` the
/// number whose root is not a union node (a leaf when `|S| = 1`, otherwise a
/// join and so `rooted(S)` again), a union root splits `S` into at least two
/// blocks, each carrying a tree not rooted at a union:
/// `rooted(S) = sum over partitions into >= 2 blocks of prod free(B)`.
/// Partitions are built block by block from the least element, memoized
/// over subsets.
pub fn count_labeled_cographs(n: usize) -> Result<u128> {
    if n == 0 || n > MAX_COUNT_N {
        return Err(Error::VertexCount(n));
    }
    if n == 1 {
        return Ok(1);
    }
    let mut memo = SubsetCounts::new(n);
    let rooted = memo.rooted(VertexSet::full(n).bits())?;
    rooted.checked_mul(2).ok_or(Error::Overflow)
}

struct SubsetCounts {
    /// `partitions[S]`: sum over all set partitions of S of prod free(B).
    partitions: Box<[Option<u128>]>,
    rooted: Box<[Option<u128>]>,
}

impl SubsetCounts {
    fn new(n: usize) -> Self {
        SubsetCounts {
            partitions: vec![None; 1 << n].into_boxed_slice(),
            rooted: vec![None; 1 << n].into_boxed_slice(),
        }
    }

    fn free(&mut self, set: u16) -> Result<u128> {
        if set.count_ones() == 1 {
            Ok(1)
        } else {
            self.rooted(set)
        }
    }

    fn partitions(&mut self, set: u16) -> Result<u128> {
        if set == 0 {
            return Ok(1);
        }
        if let Some(v) = self.partitions[set as usize] {
            return Ok(v);
        }
        let v = self.sum_over_first_block(set, true)?;
        self.partitions[set as usize] = Some(v);
        Ok(v)
    }

    fn rooted(&mut self, set: u16) -> Result<u128> {
        if let Some(v) = self.rooted[set as usize] {
            return Ok(v);
        }
        let v = self.sum_over_first_block(set, false)?;
        self.rooted[set as usize] = Some(v);
        Ok(v)
    }

    /// `sum_{B} free(B) * partitions(S \ B)` over blocks `B` containing the
    /// least element of `S`; `B = S` only when `whole` is set.
    fn sum_over_first_block(&mut self, set: u16, whole: bool) -> Result<u128> {
        let low = set & set.wrapping_neg();
        let rest = set & !low;
        let mut total = 0u128;
        let mut sub = rest;
        loop {
            let block = low | sub;
            if block != set || whole {
                let term = self
                    .free(block)?
                    .checked_mul(self.partitions(set & !block)?)
                    .ok_or(Error::Overflow)?;
                total = total.checked_add(term).ok_or(Error::Overflow)?;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        Ok(total)
    }
}

/// `s(1), ..., s(n_max)`.
pub fn sp_sequence(n_max: usize) -> Result<Vec<u128>> {
    if n_max > MAX_COUNT_N {
        return Err(Error::VertexCount(n_max));
    }
    (1..=n_max).map(count_labeled_cographs).collect()
}
