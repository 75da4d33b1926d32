//! Seidel switching on graphs over `{1..n+1}`, switching classes with the
//! top vertex `n + 1` as base point, and the additive `F_q^n` action on
//! weightings of `K_n`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::graphs::{
    has_induced_c5, has_induced_p4, slot_count, slot_index, LabeledGraph, VertexSet,
};
use crate::weights::{EdgeWeighting, FieldElement};
use crate::{Error, Result};

/// Edge mask of the cut between `x` and its complement in `K_n`.
fn cut_mask(n: usize, x: VertexSet) -> u128 {
    let mut mask = 0u128;
    for v in x.iter() {
        for u in (1..=n).filter(|&u| u != v) {
            mask ^= 1 << slot_index(n, u, v);
        }
    }
    // Edges with both ends in x were toggled twice.
    mask
}

/// Complements exactly the edges with one end in `x`. The last vertex of
/// `g` is the base point and may not be switched.
pub fn switch(g: &LabeledGraph, x: VertexSet) -> Result<LabeledGraph> {
    let n1 = g.n();
    if let Some(v) = x.max().filter(|&v| v >= n1) {
        return Err(if v == n1 {
            Error::SwitchContainsBase(v)
        } else {
            Error::VertexOutOfRange {
                vertex: v,
                n: n1 - 1,
            }
        });
    }
    LabeledGraph::from_bits(n1, g.bits() ^ cut_mask(n1, x))
}

/// An orbit of the switching action, held as its unique member in which the
/// top vertex is isolated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SwitchingClass {
    representative: LabeledGraph,
}

impl SwitchingClass {
    /// Wraps a graph whose last vertex is already isolated.
    pub fn from_representative(representative: LabeledGraph) -> Result<Self> {
        if !representative.neighbors(representative.n()).is_empty() {
            return Err(Error::BaseVertexNotIsolated);
        }
        Ok(SwitchingClass { representative })
    }

    pub fn representative(&self) -> &LabeledGraph {
        &self.representative
    }

    /// Order of the underlying vertex set, `n + 1`.
    pub fn n_plus_1(&self) -> usize {
        self.representative.n()
    }

    /// All `2^n` members, indexed by the switching set's bitmask.
    pub fn members(&self) -> impl Iterator<Item = LabeledGraph> + '_ {
        let n = self.n_plus_1() - 1;
        (0u16..1 << n).map(move |bits| {
            switch(&self.representative, VertexSet::from_bits(bits))
                .expect("switching sets avoid the base vertex")
        })
    }

    /// The representative restricted to `{1..n}`.
    pub fn base_graph(&self) -> LabeledGraph {
        self.representative
            .without_last_vertex()
            .expect("classes have at least two vertices")
    }
}

impl fmt::Display for SwitchingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

/// Graph literal whose last vertex is isolated.
impl FromStr for SwitchingClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let g: LabeledGraph = s.parse()?;
        if g.n() < 2 {
            return Err(Error::parse(0, "a class needs at least two vertices"));
        }
        Self::from_representative(g)
            .map_err(|_| Error::parse(0, "last vertex of a class representative must be isolated"))
    }
}

/// The class of `g`, represented by `switch(g, N(n+1))`.
pub fn canonical_representative(g: &LabeledGraph) -> Result<SwitchingClass> {
    if g.n() < 2 {
        return Err(Error::VertexCount(g.n()));
    }
    let rep = switch(g, g.neighbors(g.n()))?;
    SwitchingClass::from_representative(rep)
}

/// Whether some member of the class has an induced 5-cycle, decided by
/// whether the representative on `{1..n}` has an induced 4-path.
pub fn orbit_has_induced_c5(class: &SwitchingClass) -> bool {
    has_induced_p4(&class.base_graph())
}

/// [`orbit_has_induced_c5`] by scanning every member.
pub fn orbit_has_induced_c5_brute_force(class: &SwitchingClass) -> bool {
    class.members().any(|m| has_induced_c5(&m))
}

/// `g` plus an isolated vertex `n + 1`, as a class.
pub fn cograph_to_class(g: &LabeledGraph) -> Result<SwitchingClass> {
    SwitchingClass::from_representative(g.with_isolated_vertex()?)
}

/// Classes on `{1..n+1}` none of whose members has an induced 5-cycle,
/// counted with the member scan.
pub fn count_c5free_classes(n_plus_1: usize) -> Result<u64> {
    if !(2..=7).contains(&n_plus_1) {
        return Err(Error::VertexCount(n_plus_1));
    }
    let n = n_plus_1 - 1;
    let mut count = 0;
    for bits in 0..1u128 << slot_count(n) {
        let class = cograph_to_class(&LabeledGraph::from_bits(n, bits)?)?;
        if !orbit_has_induced_c5_brute_force(&class) {
            count += 1;
        }
    }
    Ok(count)
}

/// `(x . a)_ij = a_ij + x_i + x_j`.
pub fn q_switch(x: &[FieldElement], a: &EdgeWeighting) -> Result<EdgeWeighting> {
    let n = a.n();
    if x.len() != n {
        return Err(Error::VertexCountMismatch {
            left: x.len(),
            right: n,
        });
    }
    if let Some(bad) = x.iter().find(|e| e.modulus() != a.q()) {
        return Err(Error::ModulusMismatch {
            expected: a.q(),
            found: bad.modulus(),
        });
    }
    let q = a.q() as u32;
    let mut values = Vec::with_capacity(slot_count(n));
    for i in 1..=n {
        for j in i + 1..=n {
            let shifted = a.element(i, j) + x[i - 1] + x[j - 1];
            values.push(shifted.value());
        }
    }
    EdgeWeighting::new(n, q, values)
}
