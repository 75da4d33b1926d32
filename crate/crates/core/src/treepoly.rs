//! Wheel tree polynomials: evaluation of the product form, the mod-2
//! expansion over coupled spanning trees, ideal-zero tests and export.
//!
//! For `W = W(v0; v1..vk)` the tree polynomial is
//! `prod_i (m_{0,i} - m_{i,i+1}) - prod_i (m_{0,i} - m_{i-1,i})`, spoke
//! indices taken cyclically, so the wraparound chord in both products is
//! `m_{1,k}`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::str::FromStr;

use crate::graphs::{coupled_spanning_trees, enumerate_wheels, has_induced_p4, slot_index, Wheel};
use crate::weights::{check_modulus, EdgeWeighting, FieldElement};
use crate::{Error, Result};

/// Which generating set a point is tested against: all wheels (`I`) or the
/// 3-wheels, i.e. the `K_4`s with each choice of center (`J`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum IdealSpec {
    I,
    J,
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdealSpec::I => "I",
            IdealSpec::J => "J",
        })
    }
}

impl FromStr for IdealSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" => Ok(IdealSpec::I),
            "J" | "j" => Ok(IdealSpec::J),
            _ => Err(Error::parse(0, "ideal must be `I` or `J`")),
        }
    }
}

/// Subtraction and multiplication tables for one prime field.
#[derive(Clone, Debug)]
struct FieldTables {
    sub: [u8; 256],
    mul: [u8; 256],
}

impl FieldTables {
    fn new(q: u8) -> Self {
        let mut sub = [0u8; 256];
        let mut mul = [0u8; 256];
        for a in 0..q as usize {
            for b in 0..q as usize {
                sub[a << 4 | b] = ((a + q as usize - b) % q as usize) as u8;
                mul[a << 4 | b] = (a * b % q as usize) as u8;
            }
        }
        FieldTables { sub, mul }
    }

    /// `prod (v[r] - v[c])`, stopping at the first zero factor.
    #[inline]
    fn product(&self, values: &[u8], factors: &[[u16; 3]], chord: usize) -> u8 {
        let mut acc = 1u8;
        for f in factors {
            let d = self.sub
                [(values[f[0] as usize] as usize) << 4 | values[f[chord] as usize] as usize];
            if d == 0 {
                return 0;
            }
            acc = self.mul[(acc as usize) << 4 | d as usize];
        }
        acc
    }

    #[inline]
    fn tau(&self, values: &[u8], factors: &[[u16; 3]]) -> u8 {
        let t1 = self.product(values, factors, 1);
        let t2 = self.product(values, factors, 2);
        self.sub[(t1 as usize) << 4 | t2 as usize]
    }
}

/// Per factor `i`: slots of the radius `v0 v_i`, the clockwise chord
/// `v_i v_{i+1}` and the counterclockwise chord `v_{i-1} v_i`.
fn factor_slots(wheel: &Wheel, n: usize) -> Vec<[u16; 3]> {
    let k = wheel.k();
    (0..k)
        .map(|i| {
            let v = wheel.spoke(i);
            [
                slot_index(n, wheel.center(), v) as u16,
                slot_index(n, v, wheel.spoke(i + 1)) as u16,
                slot_index(n, wheel.spoke(i + k - 1), v) as u16,
            ]
        })
        .collect()
}

fn check_wheel_fits(wheel: &Wheel, n: usize) -> Result<()> {
    match wheel.vertices().max() {
        Some(v) if v > n => Err(Error::VertexOutOfRange { vertex: v, n }),
        _ => Ok(()),
    }
}

/// `tau_W(a)`.
pub fn tau_eval(wheel: &Wheel, a: &EdgeWeighting) -> Result<FieldElement> {
    check_wheel_fits(wheel, a.n())?;
    let tables = FieldTables::new(a.q());
    let value = tables.tau(a.values(), &factor_slots(wheel, a.n()));
    FieldElement::new(value as u32, a.q() as u32)
}

/// `tau_W(a)` over `F_2` as the sum over coupled spanning trees `T` of
/// `prod_{e in T} a_e`; signs vanish mod 2.
pub fn tau_eval_expanded_mod2(wheel: &Wheel, a: &EdgeWeighting) -> Result<FieldElement> {
    if a.q() != 2 {
        return Err(Error::RequiresBinaryField(a.q()));
    }
    check_wheel_fits(wheel, a.n())?;
    let ones: Vec<bool> = (0..wheel.edge_count())
        .map(|e| {
            let (u, v) = wheel.edge(e);
            a.get(u, v) == 1
        })
        .collect();
    let parity = coupled_spanning_trees(wheel)
        .into_iter()
        .filter(|t| (0..ones.len()).all(|e| !t.contains(e) || ones[e]))
        .count()
        % 2;
    FieldElement::new(parity as u32, 2)
}

/// The wheel polynomials of one ideal, compiled to edge-slot triples for a
/// fixed `(n, q)`.
#[derive(Clone, Debug)]
pub struct ZeroTester {
    n: usize,
    q: u8,
    ideal: IdealSpec,
    wheels: Vec<Wheel>,
    factors: Vec<[u16; 3]>,
    spans: Vec<(u32, u32)>,
    tables: FieldTables,
}

impl ZeroTester {
    pub fn new(n: usize, q: u32, ideal: IdealSpec) -> Result<Self> {
        crate::graphs::check_vertex_count(n)?;
        let q = check_modulus(q)?;
        let wheels = enumerate_wheels(n, ideal);
        let mut factors = Vec::new();
        let mut spans = Vec::with_capacity(wheels.len());
        for w in &wheels {
            let start = factors.len() as u32;
            factors.extend(factor_slots(w, n));
            spans.push((start, factors.len() as u32));
        }
        Ok(ZeroTester {
            n,
            q,
            ideal,
            wheels,
            factors,
            spans,
            tables: FieldTables::new(q),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn ideal(&self) -> IdealSpec {
        self.ideal
    }

    pub fn wheels(&self) -> &[Wheel] {
        &self.wheels
    }

    /// `tau` of the `index`-th wheel at the point with slot values `values`.
    #[inline]
    pub fn tau_at(&self, index: usize, values: &[u8]) -> u8 {
        let (s, e) = self.spans[index];
        self.tables
            .tau(values, &self.factors[s as usize..e as usize])
    }

    /// Index of the first wheel (in enumeration order) whose polynomial does
    /// not vanish at `values`.
    #[inline]
    pub fn first_nonzero(&self, values: &[u8]) -> Option<usize> {
        (0..self.spans.len()).find(|&i| self.tau_at(i, values) != 0)
    }

    #[inline]
    pub fn is_zero_values(&self, values: &[u8]) -> bool {
        self.first_nonzero(values).is_none()
    }

    /// Whether every generator vanishes at `a`; `a` must match `(n, q)`.
    pub fn is_zero(&self, a: &EdgeWeighting) -> Result<bool> {
        self.check_point(a)?;
        Ok(self.is_zero_values(a.values()))
    }

    /// The first generator not vanishing at `a`.
    pub fn first_violating_wheel(&self, a: &EdgeWeighting) -> Result<Option<&Wheel>> {
        self.check_point(a)?;
        Ok(self.first_nonzero(a.values()).map(|i| &self.wheels[i]))
    }

    fn check_point(&self, a: &EdgeWeighting) -> Result<()> {
        if a.n() != self.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: a.n(),
            });
        }
        if a.q() != self.q {
            return Err(Error::ModulusMismatch {
                expected: self.q,
                found: a.q(),
            });
        }
        Ok(())
    }
}

/// Whether `a` is a common zero of the generators of `ideal`.
pub fn is_zero_point(a: &EdgeWeighting, ideal: IdealSpec) -> bool {
    ZeroTester::new(a.n(), a.q() as u32, ideal)
        .and_then(|t| t.is_zero(a))
        .expect("tester built for the point's own (n, q)")
}

/// Over `F_2` a 3-wheel polynomial is nonzero iff the wheel's 1-edges form
/// one of its coupled spanning trees, and those are exactly the twelve
/// Hamiltonian paths of the `K_4`; so `a` is a zero of `J` iff `G_a` has no
/// induced `P_4`.
pub fn is_zero_j_by_graph(a: &EdgeWeighting) -> Result<bool> {
    Ok(!has_induced_p4(&a.to_graph()?))
}

/// `tau_W` as one line of integer-coefficient factors over variables `m_i_j`.
pub fn export_polynomial(wheel: &Wheel) -> String {
    let var = |(u, v): (usize, usize)| {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        alloc::format!("m_{i}_{j}")
    };
    let k = wheel.k();
    let mut out = String::new();
    for (p, back) in [(0, false), (1, true)] {
        if p == 1 {
            out.push('-');
        }
        for i in 0..k {
            if i > 0 {
                out.push('*');
            }
            let chord = if back {
                (wheel.spoke(i + k - 1), wheel.spoke(i))
            } else {
                wheel.chord(i)
            };
            let _ = write!(out, "({}-{})", var(wheel.radius(i)), var(chord));
        }
    }
    out
}

/// One exported polynomial per wheel of `K_n`, in enumeration order.
pub fn export_polynomials(n: usize, ideal: IdealSpec) -> Vec<String> {
    enumerate_wheels(n, ideal)
        .iter()
        .map(export_polynomial)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{is_coupled_spanning_tree, LabeledGraph, WheelEdgeSet};
    use std::vec::Vec;

    fn wheel(center: usize, spokes: &[usize]) -> Wheel {
        Wheel::new(center, spokes).unwrap()
    }

    /// Weighting on `K_n` with the listed wheel edges set to the given value.
    fn on_wheel(n: usize, q: u32, w: &Wheel, edges: WheelEdgeSet, weights: &[u8]) -> EdgeWeighting {
        let mut a = EdgeWeighting::zeros(n, q).unwrap();
        let mut next = weights.iter();
        for e in 0..w.edge_count() {
            let (u, v) = w.edge(e);
            if edges.contains(e) {
                a.set(u, v, *next.next().unwrap_or(&1));
            }
        }
        a
    }

    #[test]
    fn all_zero_point_vanishes() {
        for k in 3..=6 {
            let spokes: Vec<usize> = (2..=k + 1).collect();
            let w = wheel(1, &spokes);
            for q in [2, 3, 5, 7] {
                let a = EdgeWeighting::zeros(k + 1, q).unwrap();
                assert!(tau_eval(&w, &a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn binary_coupled_tree_example() {
        // W(0;1,2,3) on vertices 1..4 with G_a ∩ W = {v0v1, v2v3, v3v1}.
        let w = wheel(1, &[2, 3, 4]);
        let a = on_wheel(
            4,
            2,
            &w,
            w.edge_set(&[(1, 2), (3, 4), (4, 2)]).unwrap(),
            &[],
        );
        assert_eq!(tau_eval(&w, &a).unwrap().value(), 1);
        assert_eq!(tau_eval_expanded_mod2(&w, &a).unwrap().value(), 1);
    }

    #[test]
    fn ternary_example() {
        // Radii (a01,a02,a03) = (0,0,1), chords (a12,a23,a31) = (1,2,0):
        // tau_1 = (0-1)(0-2)(1-0) = 2, tau_2 = (0-0)(0-1)(1-2) = 0.
        let w = wheel(1, &[2, 3, 4]);
        let mut a = EdgeWeighting::zeros(4, 3).unwrap();
        a.set(1, 4, 1);
        a.set(2, 3, 1);
        a.set(3, 4, 2);
        a.set(2, 4, 0);
        assert_eq!(tau_eval(&w, &a).unwrap().value(), 2);
        // Level 0 is the path v2 v0 v1 v3.
        assert_eq!(a.weight_induced_subgraph(0), "4:12,13,24".parse().unwrap());
    }

    #[test]
    fn expansion_examples() {
        let w = wheel(1, &[2, 3, 4]);
        let ones = EdgeWeighting::new(4, 2, std::vec![1; 6]).unwrap();
        assert_eq!(tau_eval_expanded_mod2(&w, &ones).unwrap().value(), 0);
        let zero = EdgeWeighting::zeros(4, 2).unwrap();
        assert_eq!(tau_eval_expanded_mod2(&w, &zero).unwrap().value(), 0);
        let ternary = EdgeWeighting::zeros(4, 3).unwrap();
        assert_eq!(
            tau_eval_expanded_mod2(&w, &ternary),
            Err(Error::RequiresBinaryField(3))
        );
    }

    #[test]
    fn out_of_range_wheel_is_rejected() {
        let w = wheel(1, &[2, 3, 5]);
        let a = EdgeWeighting::zeros(4, 2).unwrap();
        assert_eq!(
            tau_eval(&w, &a),
            Err(Error::VertexOutOfRange { vertex: 5, n: 4 })
        );
    }

    #[test]
    fn binary_tree_iff_nonzero_and_expansion_agrees() {
        for k in 3..=5 {
            let spokes: Vec<usize> = (2..=k + 1).collect();
            let w = wheel(1, &spokes);
            for bits in 0..1u32 << (2 * k) {
                let t = WheelEdgeSet(bits);
                let a = on_wheel(k + 1, 2, &w, t, &[]);
                let tau = tau_eval(&w, &a).unwrap();
                assert_eq!(
                    !tau.is_zero(),
                    is_coupled_spanning_tree(&w, t),
                    "k={k} {bits:b}"
                );
                assert_eq!(tau, tau_eval_expanded_mod2(&w, &a).unwrap());
                let flipped = tau_eval(&w, &a.complement().unwrap()).unwrap();
                assert_eq!(tau, flipped);
            }
        }
    }

    #[test]
    fn small_orders_have_no_generators() {
        for n in 1..=3 {
            for ideal in [IdealSpec::I, IdealSpec::J] {
                let t = ZeroTester::new(n, 3, ideal).unwrap();
                assert!(t.wheels().is_empty());
                let top = 3u128.pow(crate::graphs::slot_count(n) as u32) - 1;
                assert!(t
                    .is_zero(&EdgeWeighting::from_code(n, 3, top).unwrap())
                    .unwrap());
            }
        }
    }

    #[test]
    fn binary_zero_examples() {
        let p4 = EdgeWeighting::from_graph(&"4:12,23,34".parse().unwrap());
        let claw = EdgeWeighting::from_graph(&"4:12,13,14".parse().unwrap());
        for ideal in [IdealSpec::I, IdealSpec::J] {
            assert!(!is_zero_point(&p4, ideal));
            assert!(is_zero_point(&claw, ideal));
        }
        // The claw is a zero of each of the four K4 wheel polynomials.
        for w in enumerate_wheels(4, IdealSpec::I) {
            assert!(tau_eval(&w, &claw).unwrap().is_zero());
        }
        assert!(!is_zero_j_by_graph(&p4).unwrap());
        assert!(is_zero_j_by_graph(&claw).unwrap());
    }

    #[test]
    fn graph_shortcut_matches_polynomials() {
        for n in 4..=6 {
            let tester = ZeroTester::new(n, 2, IdealSpec::J).unwrap();
            for bits in 0..1u128 << crate::graphs::slot_count(n) {
                let g = LabeledGraph::from_bits(n, bits).unwrap();
                let a = EdgeWeighting::from_graph(&g);
                assert_eq!(
                    tester.is_zero(&a).unwrap(),
                    is_zero_j_by_graph(&a).unwrap(),
                    "{g}"
                );
            }
        }
    }

    #[test]
    fn tester_rejects_foreign_points() {
        let t = ZeroTester::new(5, 3, IdealSpec::I).unwrap();
        assert!(t.is_zero(&EdgeWeighting::zeros(4, 3).unwrap()).is_err());
        assert!(t.is_zero(&EdgeWeighting::zeros(5, 5).unwrap()).is_err());
    }

    #[test]
    fn export_k3_wheel() {
        assert_eq!(
            export_polynomial(&wheel(1, &[2, 3, 4])),
            "(m_1_2-m_2_3)*(m_1_3-m_3_4)*(m_1_4-m_2_4)-(m_1_2-m_2_4)*(m_1_3-m_2_3)*(m_1_4-m_3_4)"
        );
        assert_eq!(export_polynomials(3, IdealSpec::I).len(), 0);
        assert_eq!(export_polynomials(4, IdealSpec::J).len(), 4);
        assert_eq!(export_polynomials(5, IdealSpec::I).len(), 35);
        assert_eq!(
            export_polynomials(5, IdealSpec::I),
            export_polynomials(5, IdealSpec::I)
        );
    }

    /// Evaluates an exported line at `a` without going through the wheel.
    fn eval_exported(line: &str, a: &EdgeWeighting) -> u8 {
        let q = a.q() as i64;
        let product = |text: &str| -> i64 {
            text.split('*')
                .map(|factor| {
                    let inner = factor.trim_start_matches('(').trim_end_matches(')');
                    let (l, r) = inner.split_once('-').unwrap();
                    let var = |s: &str| {
                        let mut it = s.trim_start_matches("m_").split('_');
                        let i: usize = it.next().unwrap().parse().unwrap();
                        let j: usize = it.next().unwrap().parse().unwrap();
                        a.get(i, j) as i64
                    };
                    var(l) - var(r)
                })
                .product()
        };
        let (p1, p2) = line.split_once(")-(").unwrap();
        let value = product(&std::format!("{p1})")) - product(&std::format!("({p2}"));
        value.rem_euclid(q) as u8
    }

    #[test]
    fn exported_text_evaluates_like_tau() {
        let n = 6;
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for w in enumerate_wheels(n, IdealSpec::I).iter().step_by(7) {
            let line = export_polynomial(w);
            for q in [2u32, 3, 5, 7, 13] {
                for _ in 0..20 {
                    let values = (0..15).map(|_| (next() % q as u64) as u8).collect();
                    let a = EdgeWeighting::new(n, q, values).unwrap();
                    assert_eq!(
                        eval_exported(&line, &a),
                        tau_eval(w, &a).unwrap().value(),
                        "{line}"
                    );
                }
                let constant = EdgeWeighting::new(n, q, std::vec![1; 15]).unwrap();
                assert_eq!(eval_exported(&line, &constant), 0);
            }
        }
    }
}
