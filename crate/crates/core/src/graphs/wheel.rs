use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{VertexSet, MAX_VERTICES};
use crate::treepoly::IdealSpec;
use crate::{Error, Result};

/// A `k`-wheel `W(v0; v1..vk)`: a center joined by radii to a cycle of `k`
/// spokes. The spoke sequence is stored in dihedral-minimal form, so two
/// wheels are equal iff they have the same center, spoke set and cyclic
/// adjacency.
///
/// Local edge indices: `0..k` are the radii `v0 v_{i+1}`, `k..2k` the chords
/// `v_{i+1} v_{i+2}` (indices mod `k`), i.e. chord `i` joins spoke `i` to the
/// next spoke clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Wheel {
    center: u8,
    spokes: Vec<u8>,
}

impl Wheel {
    /// Builds and canonicalizes a wheel from 1-based vertex ids.
    pub fn new(center: usize, spokes: &[usize]) -> Result<Self> {
        let k = spokes.len();
        if k < 3 {
            return Err(Error::InvalidWheel("a wheel needs at least 3 spokes"));
        }
        let mut seen = VertexSet::EMPTY;
        for &v in core::iter::once(&center).chain(spokes) {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            if seen.contains(v) {
                return Err(Error::InvalidWheel("vertices must be distinct"));
            }
            seen.insert(v);
        }
        let raw: Vec<u8> = spokes.iter().map(|&v| v as u8).collect();
        let mut best: Option<Vec<u8>> = None;
        for start in 0..k {
            for reflect in [false, true] {
                let image: Vec<u8> = (0..k)
                    .map(|i| {
                        let j = if reflect { start + k - i } else { start + i };
                        raw[j % k]
                    })
                    .collect();
                if best.as_ref().is_none_or(|b| image < *b) {
                    best = Some(image);
                }
            }
        }
        Ok(Wheel {
            center: center as u8,
            spokes: best.unwrap_or_default(),
        })
    }

    pub fn center(&self) -> usize {
        self.center as usize
    }

    pub fn spokes(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.spokes.iter().map(|&v| v as usize)
    }

    pub fn spoke(&self, i: usize) -> usize {
        self.spokes[i % self.k()] as usize
    }

    /// Number of spokes.
    pub fn k(&self) -> usize {
        self.spokes.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.k()
    }

    pub fn vertices(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        s.insert(self.center());
        for v in self.spokes() {
            s.insert(v);
        }
        s
    }

    /// Radius to spoke `i`.
    pub fn radius(&self, i: usize) -> (usize, usize) {
        (self.center(), self.spoke(i))
    }

    /// Chord from spoke `i` to spoke `i + 1` (mod `k`).
    pub fn chord(&self, i: usize) -> (usize, usize) {
        (self.spoke(i), self.spoke(i + 1))
    }

    /// Endpoints of local edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let k = self.k();
        if e < k {
            self.radius(e)
        } else {
            self.chord(e - k)
        }
    }

    /// Endpoints of every edge in `set`, in local edge order.
    pub fn edge_pairs(&self, set: WheelEdgeSet) -> Vec<(usize, usize)> {
        (0..self.edge_count())
            .filter(|&e| set.contains(e))
            .map(|e| self.edge(e))
            .collect()
    }

    /// Local edge set of the given vertex pairs; `None` if a pair is not an
    /// edge of the wheel.
    pub fn edge_set(&self, pairs: &[(usize, usize)]) -> Option<WheelEdgeSet> {
        let mut bits = 0u32;
        for &(u, v) in pairs {
            let e = (0..self.edge_count()).find(|&e| {
                let (a, b) = self.edge(e);
                (a, b) == (u, v) || (a, b) == (v, u)
            })?;
            bits |= 1 << e;
        }
        Some(WheelEdgeSet(bits))
    }

    pub fn all_edges(&self) -> WheelEdgeSet {
        WheelEdgeSet((1 << self.edge_count()) - 1)
    }
}

impl fmt::Display for Wheel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({};", self.center)?;
        for (i, v) in self.spokes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Parses `W(c;s1,...,sk)`; the `W(...)` wrapper is optional.
impl FromStr for Wheel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (body, offset) = match s.strip_prefix("W(") {
            Some(rest) => match rest.strip_suffix(')') {
                Some(body) => (body, 2),
                None => return Err(Error::parse(s.len(), "expected `)`")),
            },
            None => (s, 0),
        };
        let semi = body
            .find(';')
            .ok_or_else(|| Error::parse(offset, "expected `center;spokes`"))?;
        let number = |tok: &str, at: usize| -> Result<usize> {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(at, "expected a vertex number"))
        };
        let center = number(&body[..semi], offset)?;
        let mut spokes = Vec::new();
        let mut at = offset + semi + 1;
        for tok in body[semi + 1..].split(',') {
            spokes.push(number(tok, at)?);
            at += tok.len() + 1;
        }
        Wheel::new(center, &spokes)
    }
}

/// A subset of a wheel's `2k` local edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WheelEdgeSet(pub u32);

impl WheelEdgeSet {
    #[inline]
    pub fn contains(self, e: usize) -> bool {
        self.0 & (1 << e) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The remaining edges of `wheel`.
    pub fn complement_in(self, wheel: &Wheel) -> WheelEdgeSet {
        WheelEdgeSet(wheel.all_edges().0 & !self.0)
    }
}

/// Spanning-tree test on the wheel's `k + 1` vertices (local ids: center 0,
/// spoke `i` is `i + 1`).
fn is_spanning_tree(k: usize, set: WheelEdgeSet) -> bool {
    if set.len() != k {
        return false;
    }
    let mut parent: [u8; MAX_VERTICES + 1] = core::array::from_fn(|v| v as u8);
    fn find(parent: &mut [u8], mut v: usize) -> usize {
        while parent[v] as usize != v {
            parent[v] = parent[parent[v] as usize];
            v = parent[v] as usize;
        }
        v
    }
    for e in (0..2 * k).filter(|&e| set.contains(e)) {
        let (a, b) = if e < k {
            (0, e + 1)
        } else {
            let i = e - k;
            (i + 1, (i + 1) % k + 1)
        };
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb as u8;
    }
    // k acyclic edges on k + 1 vertices span.
    true
}

/// True iff `tree` and its complement within the wheel are both spanning trees.
pub fn is_coupled_spanning_tree(wheel: &Wheel, tree: WheelEdgeSet) -> bool {
    let k = wheel.k();
    tree.0 & !wheel.all_edges().0 == 0
        && is_spanning_tree(k, tree)
        && is_spanning_tree(k, tree.complement_in(wheel))
}

/// All coupled spanning trees, read off the expansion of the two products of
/// radius-minus-chord binomials: a nonempty proper subset `S` of radii plus
/// the clockwise chords at the spokes outside `S`, or plus the
/// counterclockwise chords there. The all-radii star and the all-chords cycle
/// are the terms that cancel, so they never appear.
pub fn coupled_spanning_trees(wheel: &Wheel) -> Vec<WheelEdgeSet> {
    let k = wheel.k();
    let mut out = Vec::with_capacity(2 * ((1 << k) - 2));
    for subset in 1u32..(1 << k) - 1 {
        let mut clockwise = subset;
        let mut counter = subset;
        for i in (0..k).filter(|&i| subset & (1 << i) == 0) {
            clockwise |= 1 << (k + i);
            counter |= 1 << (k + (i + k - 1) % k);
        }
        out.push(WheelEdgeSet(clockwise));
        out.push(WheelEdgeSet(counter));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `n * sum_{k} C(n-1, k) (k-1)!/2` over `3 <= k <= n-1` (`k = 3` only for J).
pub fn wheel_count(n: usize, ideal: IdealSpec) -> u64 {
    let top = match ideal {
        IdealSpec::I => n.saturating_sub(1),
        IdealSpec::J => 3.min(n.saturating_sub(1)),
    };
    let mut per_center = 0u64;
    for k in 3..=top {
        let cycles: u64 = (1..k as u64).product::<u64>() / 2;
        per_center += binomial(n as u64 - 1, k as u64) * cycles;
    }
    n as u64 * per_center
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every wheel of `K_n` (3-wheels only for J), one per dihedral class, sorted
/// by center and then spoke sequence.
pub fn enumerate_wheels(n: usize, ideal: IdealSpec) -> Vec<Wheel> {
    let mut wheels = Vec::new();
    if n < 4 {
        return wheels;
    }
    let max_k = match ideal {
        IdealSpec::I => n - 1,
        IdealSpec::J => 3,
    };
    for center in 1..=n {
        let others: Vec<u8> = (1..=n as u8).filter(|&v| v as usize != center).collect();
        for subset in 0u32..1 << others.len() {
            let k = subset.count_ones() as usize;
            if !(3..=max_k).contains(&k) {
                continue;
            }
            let chosen: Vec<u8> = (0..others.len())
                .filter(|&i| subset & (1 << i) != 0)
                .map(|i| others[i])
                .collect();
            // The least spoke leads; the rest run through all orders in which
            // its clockwise neighbour is smaller than its counterclockwise one.
            let mut rest = chosen[1..].to_vec();
            loop {
                if rest[0] < rest[rest.len() - 1] {
                    let mut spokes = Vec::with_capacity(k);
                    spokes.push(chosen[0]);
                    spokes.extend_from_slice(&rest);
                    wheels.push(Wheel {
                        center: center as u8,
                        spokes,
                    });
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
        }
    }
    wheels.sort_unstable();
    wheels
}

fn next_permutation(xs: &mut [u8]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).unwrap_or(i);
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}
