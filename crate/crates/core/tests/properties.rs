use proptest::prelude::*;

use slopecount_core::graphs::{
    enumerate_wheels, has_induced_p4, is_cograph_by_decomposition, slot_count,
};
use slopecount_core::switching::{canonical_representative, switch};
use slopecount_core::treepoly::tau_eval;
use slopecount_core::{
    EdgeWeighting, FieldElement, IdealSpec, LabeledGraph, TypePartition, VertexSet,
};

fn graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
    (1..=max_n).prop_flat_map(|n| {
        any::<u128>().prop_map(move |bits| {
            LabeledGraph::from_bits(n, bits & ((1u128 << slot_count(n)) - 1)).unwrap()
        })
    })
}

fn point(max_n: usize) -> impl Strategy<Value = EdgeWeighting> {
    (1..=max_n, prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])).prop_flat_map(|(n, q)| {
        prop::collection::vec(0..q as u8, slot_count(n))
            .prop_map(move |values| EdgeWeighting::new(n, q, values).unwrap())
    })
}

proptest! {
    #[test]
    fn graph_text_round_trip(g in graph(12)) {
        let back: LabeledGraph = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn complement_is_an_involution(g in graph(12)) {
        prop_assert_eq!(g.complement().complement(), g);
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), slot_count(g.n()));
    }

    #[test]
    fn cograph_tests_agree(g in graph(9)) {
        prop_assert_eq!(!has_induced_p4(&g), is_cograph_by_decomposition(&g));
        prop_assert_eq!(has_induced_p4(&g), has_induced_p4(&g.complement()));
    }

    #[test]
    fn point_code_and_text_round_trip(a in point(8)) {
        let code = a.code();
        let again = EdgeWeighting::from_code(a.n(), a.q() as u32, code).unwrap();
        prop_assert_eq!(&again, &a);
        let parsed: EdgeWeighting = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn type_partition_sums_to_slot_count(a in point(8)) {
        let t = a.classify_type();
        prop_assert_eq!(t.sum() as usize, slot_count(a.n()));
        let back: TypePartition = t.to_string().parse().unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn switching_is_an_involution(
        g in graph(9),
        x in any::<u16>(),
    ) {
        let n = g.n();
        prop_assume!(n >= 2);
        let x = VertexSet::from_bits(x & ((1 << (n - 1)) - 1));
        let once = switch(&g, x).unwrap();
        prop_assert_eq!(switch(&once, x).unwrap(), g);
        prop_assert_eq!(
            canonical_representative(&once).unwrap(),
            canonical_representative(&g).unwrap()
        );
    }

    /// `tau_W(lambda a + c) = lambda^k tau_W(a)`.
    #[test]
    fn tau_is_affinely_homogeneous(
        a in point(6),
        lambda in 1u32..13,
        shift in 0u32..13,
        pick in any::<prop::sample::Index>(),
    ) {
        let wheels = enumerate_wheels(a.n(), IdealSpec::I);
        prop_assume!(!wheels.is_empty());
        let w = &wheels[pick.index(wheels.len())];
        let q = a.q() as u32;
        let lambda = FieldElement::new(lambda % q, q).unwrap();
        prop_assume!(!lambda.is_zero());
        let shift = FieldElement::new(shift % q, q).unwrap();
        let values = a
            .values()
            .iter()
            .map(|&v| (lambda * FieldElement::new(v as u32, q).unwrap() + shift).value())
            .collect();
        let moved = EdgeWeighting::new(a.n(), q, values).unwrap();
        let mut scale = FieldElement::new(1, q).unwrap();
        for _ in 0..w.k() {
            scale = scale * lambda;
        }
        prop_assert_eq!(tau_eval(w, &moved).unwrap(), scale * tau_eval(w, &a).unwrap());
    }
}
