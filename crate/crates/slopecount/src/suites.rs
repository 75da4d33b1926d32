//! Exhaustive verification suites behind `slopecount verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use slopecount_core::graphs::{
    coupled_spanning_trees, enumerate_wheels, has_cycle, has_induced_c5, has_induced_p4,
    is_claw_pattern, is_coupled_spanning_tree, is_p4_pattern, slot_count,
};
use slopecount_core::pointcount::{verify_theorem1, OrbitCheck, THEOREM1_MAX_N};
use slopecount_core::switching::{
    canonical_representative, orbit_has_induced_c5, orbit_has_induced_c5_brute_force, switch,
};
use slopecount_core::treepoly::{tau_eval, tau_eval_expanded_mod2};
use slopecount_core::{
    EdgeWeighting, IdealSpec, LabeledGraph, VertexSet, Wheel, WheelEdgeSet, ZeroTester,
};

use crate::Error;

/// Largest `n` for the spanning-tree suite without an override.
pub const TREENOTZERO_MAX_N: usize = 8;
/// Largest `n` (graphs live on `n + 1` vertices) for the switching suite.
pub const COG5CYC_MAX_N: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[serde(rename = "1")]
    Theorem1,
    TreeNotZero,
    Cog5Cyc,
    Generalize,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Theorem1 => "1",
            Suite::TreeNotZero => "treenotzero",
            Suite::Cog5Cyc => "cog5cyc",
            Suite::Generalize => "generalize",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "1" => Ok(Suite::Theorem1),
            "treenotzero" => Ok(Suite::TreeNotZero),
            "cog5cyc" => Ok(Suite::Cog5Cyc),
            "generalize" => Ok(Suite::Generalize),
            _ => Err(format!("unknown suite `{s}`")),
        }
    }
}

/// Outcome of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub checked: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            checked: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<u8>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, u64>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn new(suite: Suite, n: Option<usize>, q: Vec<u8>) -> Self {
        SuiteReport {
            suite,
            n,
            q,
            passed: true,
            counts: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(Check::passed);
        self
    }
}

fn over_limit(suite: Suite, n: usize, max: usize) -> Error {
    Error::SuiteLimit {
        suite: suite.to_string(),
        n,
        max,
    }
}

/// Zeros of `I_n` and `J_n` over `F_2`, cographs and 5-cycle-free classes
/// agree, element by element.
pub fn theorem1(n: usize, orbits: OrbitCheck, override_budget: bool) -> Result<SuiteReport, Error> {
    if n > THEOREM1_MAX_N && !override_budget {
        return Err(over_limit(Suite::Theorem1, n, THEOREM1_MAX_N));
    }
    LabeledGraph::new(n)?;
    let mut report = SuiteReport::new(Suite::Theorem1, Some(n), vec![2]);
    let points = 1u64 << slot_count(n);
    match verify_theorem1(n, orbits) {
        Ok(c) => {
            report.counts.insert("zeros_i".into(), c.zeros_i);
            report.counts.insert("zeros_j".into(), c.zeros_j);
            report.counts.insert("cographs".into(), c.cographs);
            report
                .counts
                .insert("c5_free_classes".into(), c.c5_free_classes);
            let checks = [
                ("zero iff cograph", points),
                ("cograph iff 5-cycle-free class", points),
                ("class map injective", points),
                (
                    "class map surjective",
                    if n <= THEOREM1_MAX_N {
                        1u64 << slot_count(n + 1)
                    } else {
                        0
                    },
                ),
                ("equinumerous", 1),
            ];
            for (name, checked) in checks {
                report.checks.push(Check {
                    checked,
                    ..Check::new(name)
                });
            }
        }
        Err(f) => {
            if let Some(c) = f.counts {
                report.counts.insert("zeros_i".into(), c.zeros_i);
                report.counts.insert("zeros_j".into(), c.zeros_j);
                report.counts.insert("cographs".into(), c.cographs);
                report
                    .counts
                    .insert("c5_free_classes".into(), c.c5_free_classes);
            }
            report.checks.push(Check {
                name: f.check,
                checked: 1,
                failures: 1,
                counterexample: (!f.counterexample.is_empty()).then_some(f.counterexample),
            });
        }
    }
    Ok(report.finish())
}

fn indicator(n: usize, wheel: &Wheel, tree: WheelEdgeSet) -> EdgeWeighting {
    let mut a = EdgeWeighting::zeros(n, 2).expect("n already checked");
    for e in 0..wheel.edge_count() {
        if tree.contains(e) {
            let (u, v) = wheel.edge(e);
            a.set(u, v, 1);
        }
    }
    a
}

/// For every wheel of `K_n` with at most `max_k` spokes and every subset
/// `T` of its edges, over `F_2`: `tau_W(1_T) != 0` iff `T` is a coupled
/// spanning tree; `tau_W` equals its spanning-tree expansion; and
/// `tau_W(1_T) = tau_W(1 - 1_T)`.
pub fn treenotzero(n: usize, max_k: usize, override_budget: bool) -> Result<SuiteReport, Error> {
    if (n > TREENOTZERO_MAX_N || max_k > 6) && !override_budget {
        return Err(over_limit(Suite::TreeNotZero, n, TREENOTZERO_MAX_N));
    }
    LabeledGraph::new(n)?;
    let mut report = SuiteReport::new(Suite::TreeNotZero, Some(n), vec![2]);
    let mut nonzero = Check::new("nonzero iff coupled spanning tree");
    let mut expansion = Check::new("polynomial equals spanning-tree expansion");
    let mut symmetry = Check::new("complement symmetry");
    let mut cardinality = Check::new("2(2^k - 2) coupled spanning trees");
    let mut wheels = 0;
    let mut trees = 0;
    for wheel in enumerate_wheels(n, IdealSpec::I)
        .into_iter()
        .filter(|w| w.k() <= max_k)
    {
        wheels += 1;
        let k = wheel.k() as u64;
        let cpl = coupled_spanning_trees(&wheel);
        trees += cpl.len() as u64;
        cardinality.record(cpl.len() as u64 == 2 * ((1 << k) - 2), || {
            format!("{wheel}: {} trees", cpl.len())
        });
        for bits in 0..1u32 << wheel.edge_count() {
            let t = WheelEdgeSet(bits);
            let a = indicator(n, &wheel, t);
            let tau = tau_eval(&wheel, &a)?;
            let cst = is_coupled_spanning_tree(&wheel, t);
            nonzero.record(!tau.is_zero() == cst, || {
                format!(
                    "{wheel}, T = {:?}: tau = {}, tree = {cst}",
                    wheel.edge_pairs(t),
                    tau.value()
                )
            });
            let expanded = tau_eval_expanded_mod2(&wheel, &a)?;
            expansion.record(expanded == tau, || {
                format!("{wheel}, T = {:?}", wheel.edge_pairs(t))
            });
            let co = tau_eval(&wheel, &a.complement()?)?;
            symmetry.record(co == tau, || format!("{wheel}, point {a}"));
        }
    }
    report.counts.insert("wheels".into(), wheels);
    report.counts.insert("coupled_spanning_trees".into(), trees);
    report.checks = vec![nonzero, expansion, symmetry, cardinality];
    Ok(report.finish())
}

/// Over all graphs `H` on `[n+1]`: an induced 5-cycle in `H` forces an
/// induced 4-path in every switch of `H`; an induced 4-path in the
/// representative on `[n]` gives an induced 5-cycle somewhere in the class;
/// and the fast orbit test agrees with the member scan.
pub fn cog5cyc(n: usize, override_budget: bool) -> Result<SuiteReport, Error> {
    if n > COG5CYC_MAX_N && !override_budget {
        return Err(over_limit(Suite::Cog5Cyc, n, COG5CYC_MAX_N));
    }
    let n1 = n + 1;
    LabeledGraph::new(n1)?;
    if n == 0 {
        return Err(slopecount_core::Error::VertexCount(n).into());
    }
    let mut report = SuiteReport::new(Suite::Cog5Cyc, Some(n), Vec::new());
    let mut c5_to_p4 = Check::new("induced C5 forces induced P4 in every switch");
    let mut p4_to_c5 = Check::new("induced P4 on [n] gives induced C5 in the class");
    let mut fast_path = Check::new("fast orbit test equals member scan");
    let mut c5_free = 0;
    for bits in 0..1u128 << slot_count(n1) {
        let h = LabeledGraph::from_bits(n1, bits)?;
        let class = canonical_representative(&h)?;
        let h_c5 = has_induced_c5(&h);
        for x in 0..1u16 << n {
            let s = switch(&h, VertexSet::from_bits(x))?;
            c5_to_p4.record(!h_c5 || has_induced_p4(&s), || {
                format!("{h} switched at {x:#b} gives {s}")
            });
        }
        if *class.representative() != h {
            continue;
        }
        let brute = orbit_has_induced_c5_brute_force(&class);
        c5_free += !brute as u64;
        if has_induced_p4(&class.base_graph()) {
            p4_to_c5.record(brute, || class.to_string());
        }
        fast_path.record(orbit_has_induced_c5(&class) == brute, || class.to_string());
    }
    report.counts.insert("graphs".into(), 1 << slot_count(n1));
    report.counts.insert("classes".into(), 1 << slot_count(n));
    report.counts.insert("c5_free_classes".into(), c5_free);
    report.checks = vec![c5_to_p4, p4_to_c5, fast_path];
    Ok(report.finish())
}

/// Over `F_q` on `K_4`, for every 3-wheel and every point: a weight level
/// forming a 4-path makes `tau_W` non-zero, and a level forming a claw or
/// containing a cycle makes it vanish. The same is checked for the whole
/// ideal `I_4`.
pub fn generalize(qs: &[u8]) -> Result<SuiteReport, Error> {
    let mut report = SuiteReport::new(Suite::Generalize, Some(4), qs.to_vec());
    let mut p4 = Check::new("weight-induced P4 implies tau != 0");
    let mut claw = Check::new("weight-induced claw implies tau = 0");
    let mut cycle = Check::new("weight-induced cycle implies tau = 0");
    let mut ideal_nonzero = Check::new("weight-induced P4 implies non-zero of I_4");
    let mut ideal_zero = Check::new("weight-induced cycle or claw implies zero of I_4");
    for &q in qs {
        let tester = ZeroTester::new(4, q as u32, IdealSpec::I)?;
        let wheels = tester.wheels().to_vec();
        let total = (q as u128).pow(6);
        let mut zeros = 0;
        for code in 0..total {
            let a = EdgeWeighting::from_code(4, q as u32, code)?;
            let levels: Vec<u8> = (0..q)
                .map(|al| a.weight_induced_subgraph(al).bits() as u8)
                .collect();
            let has_p4 = levels.iter().any(|&m| is_p4_pattern(m));
            let has_claw = levels.iter().any(|&m| is_claw_pattern(m));
            let has_cyc = levels
                .iter()
                .any(|&m| has_cycle(&LabeledGraph::from_bits(4, m as u128).expect("4 vertices")));
            for (i, w) in wheels.iter().enumerate() {
                let tau = tester.tau_at(i, a.values());
                if has_p4 {
                    p4.record(tau != 0, || format!("{w} at {a}"));
                }
                if has_claw {
                    claw.record(tau == 0, || format!("{w} at {a}"));
                }
                if has_cyc {
                    cycle.record(tau == 0, || format!("{w} at {a}"));
                }
            }
            let zero = tester.is_zero_values(a.values());
            zeros += zero as u64;
            if has_p4 {
                ideal_nonzero.record(!zero, || a.to_string());
            }
            if has_claw || has_cyc {
                ideal_zero.record(zero, || a.to_string());
            }
        }
        report.counts.insert(format!("zeros_i4_q{q}"), zeros);
    }
    report.checks = vec![p4, claw, cycle, ideal_nonzero, ideal_zero];
    Ok(report.finish())
}
