//! The running Boeing example: one four-row cross-lingual timeline, its
//! graphs under each metric, their reductions, and a deficient system.

mod common;

use common::boeing::{boeing, coreference_edge, expected_graph, expected_reduced};
use common::fixtures;
use tlx_core::harness::read_timeline;
use tlx_core::scorer::{closure, reduce, score_pair, timeline_to_graph, MetricMode};

#[test]
fn graphs_match_hand_transcription() {
    let t = boeing(&fixtures());
    for mode in MetricMode::ALL {
        assert_eq!(timeline_to_graph(&t, mode).edges(), &expected_graph(mode), "{mode}");
    }
    assert_eq!(expected_graph(MetricMode::SemEval).len(), 15);
}

#[test]
fn reductions_match_hand_derivation() {
    let t = boeing(&fixtures());
    for mode in MetricMode::ALL {
        let r = reduce(&timeline_to_graph(&t, mode), mode);
        assert_eq!(r.edges(), &expected_reduced(mode), "{mode}");
    }
}

#[test]
fn strict_reduction_keeps_the_identity_link() {
    let t = boeing(&fixtures());
    let r = reduce(&timeline_to_graph(&t, MetricMode::Strict), MetricMode::Strict);
    assert!(r.contains(&coreference_edge(MetricMode::Strict)));
}

#[test]
fn reductions_keep_their_closures() {
    let t = boeing(&fixtures());
    for mode in MetricMode::ALL {
        let g = timeline_to_graph(&t, mode);
        let r = reduce(&g, mode);
        assert_eq!(closure(&r).unwrap().edges(), closure(&g).unwrap().edges(), "{mode}");
    }
}

#[test]
fn missing_cross_lingual_mention_hurts_strict_more_than_relaxed() {
    let gold = boeing(&fixtures());
    let sys = read_timeline(&fixtures().join("boeing_example/boeing_missing_revelado.timeline")).unwrap();
    let strict = score_pair(&sys, &gold, MetricMode::Strict).unwrap();
    let relaxed = score_pair(&sys, &gold, MetricMode::Relaxed).unwrap();
    assert!(strict.recall < relaxed.recall);
    assert_eq!(relaxed.recall, 1.0);
    assert_eq!(strict.precision, 1.0);
    assert!(strict.f1 <= relaxed.f1);
}
