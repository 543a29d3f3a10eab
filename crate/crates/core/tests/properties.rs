//! Randomized invariant checks for the graph and packing primitives.

use proptest::prelude::*;
use tripack_core::canon::canonical_form;
use tripack_core::catalog::pair_entries;
use tripack_core::graph::{union_graph, SimpleGraph, TriplePacking, TwoFactorShape};

fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (3..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let mut g = SimpleGraph::new(n);
            let mut k = 0;
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn shape_display_parse_round_trip(
        lengths in proptest::collection::vec(3..12usize, 1..5)
    ) {
        let s = TwoFactorShape::new(lengths).unwrap();
        let bare = s.to_string().trim_matches(['[', ']']).to_string();
        prop_assert_eq!(TwoFactorShape::parse(&bare).unwrap(), s);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(12)) {
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn relabel_preserves_degree_multiset(g in arb_graph(10)) {
        let n = g.n();
        let perm: Vec<usize> = (1..=n).rev().collect();
        let h = g.relabel(&perm);
        let mut dg: Vec<usize> = (1..=n).map(|v| g.degree(v)).collect();
        let mut dh: Vec<usize> = (1..=n).map(|v| h.degree(v)).collect();
        dg.sort();
        dh.sort();
        prop_assert_eq!(dg, dh);
        prop_assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn canonical_form_invariant_under_relabeling(
        (g, perm) in arb_graph(9).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), arb_perm(n))
        })
    ) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn packing_serialization_round_trips(idx in 0..46usize) {
        let p: &TriplePacking = &pair_entries().nth(idx).unwrap().packings[0];
        let via_json = TriplePacking::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(&via_json, p);
        let via_edges = TriplePacking::from_edge_list(&p.to_edge_list()).unwrap().normalized();
        prop_assert_eq!(union_graph(&via_edges).unwrap(), union_graph(p).unwrap());
        prop_assert_eq!(&via_edges.shape, &p.shape);
    }

    #[test]
    fn normalization_is_idempotent(idx in 0..46usize) {
        let p = pair_entries().nth(idx).unwrap().packings[1].clone();
        let once = p.clone().normalized();
        let twice = once.clone().normalized();
        prop_assert_eq!(once, twice);
    }
}
