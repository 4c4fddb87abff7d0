//! Hand-derived graphs of the four-row Boeing timeline.

use std::collections::BTreeSet;
use std::path::Path;

use tlx_core::harness::read_timeline;
use tlx_core::scorer::{Edge, MetricMode, NodeId};
use tlx_core::timeline::MentionRef;
use tlx_core::Timeline;

pub fn boeing(fixtures: &Path) -> Timeline {
    read_timeline(&fixtures.join("boeing_example/boeing.timeline")).unwrap()
}

fn ev(doc: &str, sent: usize, extent: &str) -> NodeId {
    NodeId::Event(MentionRef::new(doc, sent, extent))
}

fn tx(v: &str) -> NodeId {
    NodeId::Timex(v.into())
}

fn ty(label: &str) -> NodeId {
    NodeId::EventType(label.into())
}

pub struct Nodes {
    pub launched: NodeId,
    pub unveils: NodeId,
    pub revelado: NodeId,
    pub relationship: NodeId,
    pub acuerdo: NodeId,
}

pub fn nodes() -> Nodes {
    Nodes {
        launched: ev("en-18320", 1, "launched"),
        unveils: ev("en-18319", 1, "unveils"),
        revelado: ev("es-18319", 1, "revelado"),
        relationship: ev("en-18320", 2, "relationship"),
        acuerdo: ev("es-18320", 1, "acuerdo"),
    }
}

/// The coreferent pair `unveils`/`revelado`: SIMULTANEOUS, except IDENTITY
/// under the strict metric.
pub fn coreference_edge(mode: MetricMode) -> Edge {
    let n = nodes();
    match mode {
        MetricMode::Strict => Edge::identity(n.unveils, n.revelado),
        _ => Edge::simultaneous(n.unveils, n.revelado),
    }
}

/// Collapsed-row nodes: launched, unveils(+revelado), relationship, acuerdo.
fn types() -> [NodeId; 4] {
    [
        ty("en-18320#1#launched"),
        ty("en-18319#1#unveils"),
        ty("en-18320#2#relationship"),
        ty("es-18320#1#acuerdo"),
    ]
}

/// Full graph of the timeline under `mode`.
pub fn expected_graph(mode: MetricMode) -> BTreeSet<Edge> {
    if mode == MetricMode::Relaxed {
        let [l, u, e, a] = types();
        return BTreeSet::from([
            Edge::simultaneous(tx("2005"), l.clone()),
            Edge::simultaneous(tx("2007-07-08"), u.clone()),
            Edge::simultaneous(tx("2007-07-10"), e.clone()),
            Edge::simultaneous(tx("2007-07-10"), a.clone()),
            Edge::simultaneous(e.clone(), a.clone()),
            Edge::before(l.clone(), u.clone()),
            Edge::before(l.clone(), e.clone()),
            Edge::before(l, a.clone()),
            Edge::before(u.clone(), e),
            Edge::before(u, a),
        ]);
    }
    let n = nodes();
    let mut s = BTreeSet::from([
        Edge::simultaneous(tx("2005"), n.launched.clone()),
        Edge::simultaneous(tx("2007-07-08"), n.unveils.clone()),
        Edge::simultaneous(tx("2007-07-08"), n.revelado.clone()),
        Edge::simultaneous(tx("2007-07-10"), n.relationship.clone()),
        Edge::simultaneous(tx("2007-07-10"), n.acuerdo.clone()),
        Edge::simultaneous(n.relationship.clone(), n.acuerdo.clone()),
        coreference_edge(mode),
    ]);
    for (a, b) in [
        (&n.launched, &n.unveils),
        (&n.launched, &n.revelado),
        (&n.launched, &n.relationship),
        (&n.launched, &n.acuerdo),
        (&n.unveils, &n.relationship),
        (&n.unveils, &n.acuerdo),
        (&n.revelado, &n.relationship),
        (&n.revelado, &n.acuerdo),
    ] {
        s.insert(Edge::before(a.clone(), b.clone()));
    }
    s
}

/// Greedy reduction in edge order, worked by hand.
pub fn expected_reduced(mode: MetricMode) -> BTreeSet<Edge> {
    if mode == MetricMode::Relaxed {
        let [l, u, e, a] = types();
        return BTreeSet::from([
            Edge::before(l.clone(), u.clone()),
            Edge::before(u.clone(), a.clone()),
            Edge::simultaneous(tx("2005"), l),
            Edge::simultaneous(tx("2007-07-08"), u),
            Edge::simultaneous(tx("2007-07-10"), a.clone()),
            Edge::simultaneous(e, a),
        ]);
    }
    let n = nodes();
    BTreeSet::from([
        Edge::before(n.launched.clone(), n.revelado.clone()),
        Edge::before(n.revelado.clone(), n.acuerdo.clone()),
        Edge::simultaneous(tx("2005"), n.launched.clone()),
        Edge::simultaneous(tx("2007-07-08"), n.revelado.clone()),
        Edge::simultaneous(tx("2007-07-10"), n.acuerdo.clone()),
        Edge::simultaneous(n.relationship.clone(), n.acuerdo.clone()),
        coreference_edge(mode),
    ])
}
