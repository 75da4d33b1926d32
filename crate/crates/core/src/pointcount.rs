//! Exhaustive enumeration of `F_q^{C(n,2)}`.
//!
//! Points are addressed by their base-`q` code (slot `(1,2)` most
//! significant). The space is cut into contiguous code ranges that can be
//! counted independently and summed in range order; this module does the
//! per-range work, the `slopecount` crate schedules ranges on a worker pool.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::graphs::{is_cograph, slot_count, slot_index, LabeledGraph, Wheel};
use crate::switching::{
    canonical_representative, cograph_to_class, orbit_has_induced_c5,
    orbit_has_induced_c5_brute_force, SwitchingClass,
};
use crate::treepoly::{IdealSpec, ZeroTester};
use crate::weights::{check_modulus, EdgeWeighting, TypePartition};
use crate::{Error, Result};

/// Default refusal threshold on the number of points.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

/// Smallest range handed to a worker.
pub const MIN_RANGE: u128 = 1 << 16;

/// Ranges per point space, before the `MIN_RANGE` floor.
const TARGET_RANGES: u128 = 1024;

/// `q^{C(n,2)}`, or `None` if it does not fit in a `u128`.
pub fn total_points(n: usize, q: u32) -> Option<u128> {
    (q as u128).checked_pow(slot_count(n) as u32)
}

/// The point count of `(n, q)` if it is within `budget`.
pub fn check_budget(n: usize, q: u32, budget: u128) -> Result<u128> {
    crate::graphs::check_vertex_count(n)?;
    check_modulus(q)?;
    match total_points(n, q) {
        Some(points) if points <= budget => Ok(points),
        Some(points) => Err(Error::Budget {
            points,
            limit: budget,
        }),
        None => Err(Error::Budget {
            points: u128::MAX,
            limit: budget,
        }),
    }
}

/// Contiguous code ranges covering `0..total` exactly once, in order. The
/// cut depends only on `total`.
pub fn partition_ranges(total: u128) -> Vec<Range<u128>> {
    let size = total.div_ceil(TARGET_RANGES).max(MIN_RANGE);
    let mut out = Vec::new();
    let mut start = 0;
    while start < total {
        let end = (start + size).min(total);
        out.push(start..end);
        start = end;
    }
    out
}

/// Base-`q` digit counter over edge slots.
#[derive(Clone, Debug)]
pub struct Odometer {
    q: u8,
    digits: Vec<u8>,
}

impl Odometer {
    pub fn new(n: usize, q: u8, code: u128) -> Self {
        let d = slot_count(n);
        let mut digits = alloc::vec![0u8; d];
        let mut rest = code;
        for v in digits.iter_mut().rev() {
            *v = (rest % q as u128) as u8;
            rest /= q as u128;
        }
        Odometer { q, digits }
    }

    #[inline]
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Steps to the next code; wraps to all zeros after the last one.
    #[inline]
    pub fn advance(&mut self) {
        for v in self.digits.iter_mut().rev() {
            *v += 1;
            if *v < self.q {
                return;
            }
            *v = 0;
        }
    }
}

/// How the zero test is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum CountMethod {
    /// Evaluate every generator of the ideal, with early exit.
    Polynomial,
    /// `q = 2`, ideal `J`: scan 4-subsets for an induced path in `G_a`.
    GraphShortcut,
}

/// Zeros of `tester`'s ideal among the codes in `range`.
pub fn count_range(tester: &ZeroTester, range: Range<u128>) -> u64 {
    let mut odo = Odometer::new(tester.n(), tester.q(), range.start);
    let mut zeros = 0;
    let mut code = range.start;
    while code < range.end {
        zeros += tester.is_zero_values(odo.digits()) as u64;
        odo.advance();
        code += 1;
    }
    zeros
}

/// Per 4-subset of `K_n`, the bit positions in a base-2 point code of its six
/// pairs, in the local order `01, 02, 03, 12, 13, 23`.
#[derive(Clone, Debug)]
pub struct P4Scanner {
    quads: Vec<[u8; 6]>,
    p4: [bool; 64],
}

impl P4Scanner {
    pub fn new(n: usize) -> Self {
        let d = slot_count(n);
        let mut quads = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for e in c + 1..=n {
                        let vs = [a, b, c, e];
                        let mut shifts = [0u8; 6];
                        let mut s = 0;
                        for i in 0..4 {
                            for j in i + 1..4 {
                                shifts[s] = (d - 1 - slot_index(n, vs[i], vs[j])) as u8;
                                s += 1;
                            }
                        }
                        quads.push(shifts);
                    }
                }
            }
        }
        let mut p4 = [false; 64];
        for &m in &crate::graphs::P4_PATTERNS {
            p4[m as usize] = true;
        }
        P4Scanner { quads, p4 }
    }

    /// Whether the graph with base-2 code `code` has an induced 4-path.
    #[inline]
    pub fn has_p4(&self, code: u128) -> bool {
        self.quads.iter().any(|shifts| {
            let mut m = 0usize;
            for (s, &sh) in shifts.iter().enumerate() {
                m |= (((code >> sh) & 1) as usize) << s;
            }
            self.p4[m]
        })
    }
}

/// Zeros of `J` over `F_2` in `range`, by the graph-level test.
pub fn count_range_graph_shortcut(scanner: &P4Scanner, range: Range<u128>) -> u64 {
    range.filter(|&code| !scanner.has_p4(code)).count() as u64
}

/// Zero and non-zero counts of one wheel polynomial, keyed by point type.
pub type TypeTable = BTreeMap<TypePartition, (u64, u64)>;

/// Classifies every point of `range` by type and by whether `tau_W`
/// vanishes there.
pub fn tabulate_range(n: usize, q: u8, wheel: &Wheel, range: Range<u128>) -> Result<TypeTable> {
    let probe = EdgeWeighting::zeros(n, q as u32)?;
    crate::treepoly::tau_eval(wheel, &probe)?;
    let tester = SingleWheel::new(n, q, wheel)?;
    let mut raw: BTreeMap<[u8; 13], (u64, u64)> = BTreeMap::new();
    let mut odo = Odometer::new(n, q, range.start);
    for _ in range {
        let digits = odo.digits();
        let mut counts = [0u8; 13];
        for &v in digits {
            counts[v as usize] += 1;
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        let entry = raw.entry(counts).or_default();
        if tester.is_zero(digits) {
            entry.0 += 1;
        } else {
            entry.1 += 1;
        }
        odo.advance();
    }
    Ok(raw
        .into_iter()
        .map(|(counts, v)| {
            let parts = counts
                .iter()
                .take_while(|&&c| c > 0)
                .map(|&c| c as u32)
                .collect();
            (TypePartition::new(parts).expect("positive parts"), v)
        })
        .collect())
}

/// Adds `other` into `into`, row by row.
pub fn merge_tables(into: &mut TypeTable, other: TypeTable) {
    for (t, (z, nz)) in other {
        let e = into.entry(t).or_default();
        e.0 += z;
        e.1 += nz;
    }
}

struct SingleWheel {
    tester: ZeroTester,
    index: usize,
}

impl SingleWheel {
    fn new(n: usize, q: u8, wheel: &Wheel) -> Result<Self> {
        let tester = ZeroTester::new(n, q as u32, IdealSpec::I)?;
        let index = tester
            .wheels()
            .iter()
            .position(|w| w == wheel)
            .ok_or(Error::InvalidWheel("wheel is not in K_n"))?;
        Ok(SingleWheel { tester, index })
    }

    fn is_zero(&self, values: &[u8]) -> bool {
        self.tester.tau_at(self.index, values) == 0
    }
}

/// Zero status of one point under both ideals, plus the graph view over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Classification {
    pub point: String,
    pub n: usize,
    pub q: u8,
    pub zero_i: bool,
    pub zero_j: bool,
    /// First wheel of `I` (in enumeration order) not vanishing at the point.
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub first_violating_wheel: Option<String>,
    /// `G_a` as a graph literal (`q = 2` only).
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub graph: Option<String>,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub edges: Option<Vec<[usize; 2]>>,
    #[cfg_attr(
        feature = "serde",
        serde(skip_serializing_if = "Option::is_none", default)
    )]
    pub is_cograph: Option<bool>,
}

pub fn classify_point(a: &EdgeWeighting) -> Classification {
    let tester_i = ZeroTester::new(a.n(), a.q() as u32, IdealSpec::I).expect("valid point");
    let tester_j = ZeroTester::new(a.n(), a.q() as u32, IdealSpec::J).expect("valid point");
    let first = tester_i
        .first_violating_wheel(a)
        .expect("tester matches point")
        .map(|w| w.to_string());
    let graph = a.to_graph().ok();
    Classification {
        point: a.to_string(),
        n: a.n(),
        q: a.q(),
        zero_i: first.is_none(),
        zero_j: tester_j.is_zero(a).expect("tester matches point"),
        first_violating_wheel: first,
        graph: graph.map(|g| g.to_string()),
        edges: graph.map(|g| g.edges().map(|(i, j)| [i, j]).collect()),
        is_cograph: graph.map(|g| is_cograph(&g)),
    }
}

/// How orbits are checked for an induced 5-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitCheck {
    /// Induced 4-path in the representative on `{1..n}`.
    FastPath,
    /// Scan all `2^n` members.
    BruteForce,
}

/// The four cardinalities compared over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Theorem1Counts {
    pub n: usize,
    pub zeros_i: u64,
    pub zeros_j: u64,
    pub cographs: u64,
    pub c5_free_classes: u64,
}

impl Theorem1Counts {
    pub fn all_equal(&self) -> bool {
        self.zeros_i == self.zeros_j
            && self.zeros_j == self.cographs
            && self.cographs == self.c5_free_classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Theorem1Failure {
    pub check: String,
    pub counterexample: String,
    pub counts: Option<Theorem1Counts>,
}

/// Largest `n` verified without an override.
pub const THEOREM1_MAX_N: usize = 6;

/// Computes the zeros of `I_n` and `J_n` over `F_2` by polynomial
/// evaluation, the cographs on `[n]` by pattern scan, and the classes on
/// `[n+1]` without an induced 5-cycle by orbit checks; checks that they are
/// equal, and that the bijections hold element by element: `a` is a zero iff
/// `G_a` is a cograph, and adding an isolated vertex sends cographs exactly
/// onto the 5-cycle-free classes.
pub fn verify_theorem1(
    n: usize,
    orbits: OrbitCheck,
) -> core::result::Result<Theorem1Counts, Theorem1Failure> {
    let fail = |check: &str, counterexample: String| Theorem1Failure {
        check: check.into(),
        counterexample,
        counts: None,
    };
    let tester_i = ZeroTester::new(n, 2, IdealSpec::I).map_err(|e| fail("setup", e.to_string()))?;
    let tester_j = ZeroTester::new(n, 2, IdealSpec::J).map_err(|e| fail("setup", e.to_string()))?;
    let mut counts = Theorem1Counts {
        n,
        zeros_i: 0,
        zeros_j: 0,
        cographs: 0,
        c5_free_classes: 0,
    };
    let mut representatives = BTreeSet::new();
    for code in 0..1u128 << slot_count(n) {
        let a = EdgeWeighting::from_code(n, 2, code).map_err(|e| fail("setup", e.to_string()))?;
        let g = a.to_graph().map_err(|e| fail("setup", e.to_string()))?;
        let zero_i = tester_i.is_zero_values(a.values());
        let zero_j = tester_j.is_zero_values(a.values());
        let cograph = is_cograph(&g);
        let class = cograph_to_class(&g).map_err(|e| fail("setup", e.to_string()))?;
        let c5_free = !match orbits {
            OrbitCheck::FastPath => orbit_has_induced_c5(&class),
            OrbitCheck::BruteForce => orbit_has_induced_c5_brute_force(&class),
        };
        counts.zeros_i += zero_i as u64;
        counts.zeros_j += zero_j as u64;
        counts.cographs += cograph as u64;
        counts.c5_free_classes += c5_free as u64;
        if zero_i != cograph || zero_j != cograph {
            return Err(fail(
                "zero iff cograph",
                alloc::format!("{a} (zero_I={zero_i}, zero_J={zero_j}, cograph={cograph})"),
            ));
        }
        if c5_free != cograph {
            return Err(fail(
                "cograph iff 5-cycle-free class",
                alloc::format!("{g} -> class {class} (c5_free={c5_free})"),
            ));
        }
        if !representatives.insert(class) {
            return Err(fail("class map injective", g.to_string()));
        }
    }
    // Surjectivity onto classes: every graph on [n+1] lands on an image.
    if n <= THEOREM1_MAX_N {
        for bits in 0..1u128 << slot_count(n + 1) {
            let h =
                LabeledGraph::from_bits(n + 1, bits).map_err(|e| fail("setup", e.to_string()))?;
            let class: SwitchingClass =
                canonical_representative(&h).map_err(|e| fail("setup", e.to_string()))?;
            if !representatives.contains(&class) {
                return Err(fail("class map surjective", h.to_string()));
            }
        }
    }
    if !counts.all_equal() {
        return Err(Theorem1Failure {
            check: "equinumerous".into(),
            counterexample: String::new(),
            counts: Some(counts),
        });
    }
    Ok(counts)
}
