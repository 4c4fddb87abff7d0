mod common;

use std::collections::BTreeSet;

use common::oracle::{naive_closure, random_consistent_graph, random_graphs};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tlx_core::scorer::{closure, consistency_check, reduce, Edge, MetricMode, NodeId, Relation, TemporalGraph};

fn closed(g: &TemporalGraph) -> BTreeSet<Edge> {
    closure(g).expect("consistent graph").edges().clone()
}

fn ty(s: &str) -> NodeId {
    NodeId::EventType(s.into())
}

#[test]
fn closure_matches_brute_force_on_random_graphs() {
    for (i, g) in random_graphs(7, 1200).iter().enumerate() {
        assert!(consistency_check(g).is_empty(), "graph {i} flagged inconsistent");
        assert_eq!(closed(g), naive_closure(g), "graph {i}: {:?}", g.edges());
    }
}

#[test]
fn closure_is_idempotent() {
    for g in random_graphs(11, 300) {
        let once = closure(&g).unwrap();
        assert_eq!(closure(&once).unwrap().edges(), once.edges());
    }
}

#[test]
fn reduction_preserves_closure_and_is_minimal() {
    for (i, g) in random_graphs(13, 400).iter().enumerate() {
        let full = closed(g);
        for mode in [MetricMode::SemEval, MetricMode::Strict] {
            let r = reduce(g, mode);
            assert!(r.edges().is_subset(g.edges()));
            assert_eq!(closed(&r), full, "graph {i} {mode}: closure changed");
            for e in r.edges() {
                if mode == MetricMode::Strict && e.relation == Relation::Identity {
                    continue;
                }
                let mut smaller = r.clone();
                smaller.remove_edge(e);
                assert_ne!(closed(&smaller), full, "graph {i} {mode}: {e} is redundant");
            }
        }
    }
}

#[test]
fn strict_reduction_keeps_every_identity_edge() {
    for g in random_graphs(17, 300) {
        let r = reduce(&g, MetricMode::Strict);
        for e in g.edges().iter().filter(|e| e.relation == Relation::Identity) {
            assert!(r.contains(e), "{e} dropped");
        }
    }
}

#[test]
fn contradiction_and_cycle_are_reported() {
    let g = TemporalGraph::from_edges([Edge::before(ty("a"), ty("b")), Edge::simultaneous(ty("a"), ty("b"))]);
    assert!(!consistency_check(&g).is_empty());
    assert!(closure(&g).is_err());

    let g = TemporalGraph::from_edges([
        Edge::before(ty("a"), ty("b")),
        Edge::before(ty("b"), ty("c")),
        Edge::simultaneous(ty("c"), ty("a")),
    ]);
    assert!(!consistency_check(&g).is_empty());
    assert!(closure(&g).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn symmetric_edges_are_canonical(a in "[a-e]", b in "[a-e]", sym in any::<bool>()) {
        let rel = if sym { Relation::Simultaneous } else { Relation::Identity };
        let x = Edge::new(rel, ty(&a), ty(&b));
        let y = Edge::new(rel, ty(&b), ty(&a));
        prop_assert_eq!(&x, &y);
        prop_assert!(x.source <= x.target);
    }

    #[test]
    fn closure_has_no_self_loops_and_symmetric_pairs_once(seed in any::<u64>()) {
        let g = random_consistent_graph(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = closure(&g).unwrap();
        for e in c.edges() {
            prop_assert!(!e.is_self_loop());
            if e.relation.is_symmetric() {
                prop_assert!(e.source < e.target);
            }
        }
        // BEFORE is antisymmetric in a consistent closure
        for e in c.edges().iter().filter(|e| e.relation == Relation::Before) {
            prop_assert!(!c.contains(&Edge::before(e.target.clone(), e.source.clone())));
        }
    }

    #[test]
    fn reduction_is_deterministic(seed in any::<u64>()) {
        let g = random_consistent_graph(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = TemporalGraph::from_edges(g.edges().iter().rev().cloned());
        let (a, b) = (reduce(&g, MetricMode::SemEval), reduce(&shuffled, MetricMode::SemEval));
        prop_assert_eq!(a.edges(), b.edges());
    }
}
