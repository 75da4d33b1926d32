//! Induced-pattern detection by exhaustive subset scan.
//!
//! A `k`-subset `v_0 < .. < v_{k-1}` is summarised by a local edge mask over
//! its `C(k,2)` pairs in lexicographic order; a subset induces a pattern iff
//! its local mask is one of the pattern's labeled copies.

use super::labeled::components_of;
use super::{LabeledGraph, VertexSet, MAX_VERTICES};

/// Local pairs of a 4-set: `01, 02, 03, 12, 13, 23`.
const PAIRS4: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

const PAIRS5: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// The 12 labeled 4-vertex paths as local masks over [`PAIRS4`].
pub const P4_PATTERNS: [u8; 12] = labeled_p4s();

/// The 12 labeled 5-cycles as local masks over the 10 pairs of a 5-set.
pub const C5_PATTERNS: [u16; 12] = labeled_c5s();

const P4_TABLE: [bool; 64] = {
    let mut t = [false; 64];
    let mut i = 0;
    while i < 12 {
        t[P4_PATTERNS[i] as usize] = true;
        i += 1;
    }
    t
};

const C5_TABLE: [bool; 1024] = {
    let mut t = [false; 1024];
    let mut i = 0;
    while i < 12 {
        t[C5_PATTERNS[i] as usize] = true;
        i += 1;
    }
    t
};

const fn degrees<const K: usize, const P: usize>(
    pairs: &[(usize, usize); P],
    mask: u32,
) -> [u8; K] {
    let mut deg = [0u8; K];
    let mut s = 0;
    while s < P {
        if mask & (1 << s) != 0 {
            deg[pairs[s].0] += 1;
            deg[pairs[s].1] += 1;
        }
        s += 1;
    }
    deg
}

const fn labeled_p4s() -> [u8; 12] {
    let mut out = [0u8; 12];
    let mut found = 0;
    let mut mask = 0u32;
    while mask < 64 {
        if mask.count_ones() == 3 {
            let deg = degrees::<4, 6>(&PAIRS4, mask);
            let (mut ones, mut twos) = (0, 0);
            let mut v = 0;
            while v < 4 {
                if deg[v] == 1 {
                    ones += 1;
                } else if deg[v] == 2 {
                    twos += 1;
                }
                v += 1;
            }
            // Three edges with degrees 1,1,2,2 form a path: a triangle would
            // leave a degree-0 vertex.
            if ones == 2 && twos == 2 {
                out[found] = mask as u8;
                found += 1;
            }
        }
        mask += 1;
    }
    assert!(found == 12);
    out
}

const fn labeled_c5s() -> [u16; 12] {
    let mut out = [0u16; 12];
    let mut found = 0;
    let mut mask = 0u32;
    while mask < 1024 {
        if mask.count_ones() == 5 {
            let deg = degrees::<5, 10>(&PAIRS5, mask);
            let mut regular = true;
            let mut v = 0;
            while v < 5 {
                if deg[v] != 2 {
                    regular = false;
                }
                v += 1;
            }
            // 2-regular on 5 vertices is C5 or a triangle plus a 2-cycle; the
            // latter is not simple, so every hit is a 5-cycle.
            if regular {
                out[found] = mask as u16;
                found += 1;
            }
        }
        mask += 1;
    }
    assert!(found == 12);
    out
}

#[inline]
fn local_mask<const P: usize>(
    rows: &[u16; MAX_VERTICES],
    vs: &[usize],
    pairs: &[(usize, usize); P],
) -> usize {
    let mut mask = 0usize;
    for (s, &(a, b)) in pairs.iter().enumerate() {
        if rows[vs[a]] & (1 << vs[b]) != 0 {
            mask |= 1 << s;
        }
    }
    mask
}

/// Whether a 4-vertex local mask (pairs `01,02,03,12,13,23`) is a path.
#[inline]
pub fn is_p4_pattern(mask: u8) -> bool {
    P4_TABLE[(mask & 63) as usize]
}

/// Whether a 4-vertex local mask is a star with three edges.
pub fn is_claw_pattern(mask: u8) -> bool {
    let mask = mask & 63;
    mask.count_ones() == 3 && degrees::<4, 6>(&PAIRS4, mask as u32).contains(&3)
}

/// True iff some 4 vertices induce a path.
pub fn has_induced_p4(g: &LabeledGraph) -> bool {
    let n = g.n();
    let rows = g.adjacency();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if P4_TABLE[local_mask(&rows, &[a, b, c, d], &PAIRS4)] {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// True iff some 5 vertices induce a 5-cycle.
pub fn has_induced_c5(g: &LabeledGraph) -> bool {
    let n = g.n();
    let rows = g.adjacency();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        if C5_TABLE[local_mask(&rows, &[a, b, c, d, e], &PAIRS5)] {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// P4-freeness by pattern scan.
pub fn is_cograph(g: &LabeledGraph) -> bool {
    !has_induced_p4(g)
}

/// P4-freeness by complement reducibility: every induced subgraph on two or
/// more vertices reached by splitting into components (of the graph or of its
/// complement) must itself split again.
pub fn is_cograph_by_decomposition(g: &LabeledGraph) -> bool {
    reducible(&g.adjacency(), VertexSet::full(g.n()).bits())
}

fn reducible(rows: &[u16; MAX_VERTICES], set: u16) -> bool {
    if set.count_ones() <= 1 {
        return true;
    }
    let parts = components_of(rows, set);
    if parts.len() > 1 {
        return parts.into_iter().all(|p| reducible(rows, p));
    }
    let mut co = [0u16; MAX_VERTICES];
    for (v, row) in co.iter_mut().enumerate() {
        *row = !rows[v] & set & !(1 << v);
    }
    let parts = components_of(&co, set);
    parts.len() > 1 && parts.into_iter().all(|p| reducible(rows, p))
}

/// True iff the graph is not a forest.
pub fn has_cycle(g: &LabeledGraph) -> bool {
    g.edge_count() + g.components(VertexSet::full(g.n())).len() > g.n()
}
