use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::timeline::{MentionRef, Timeline};

/// Graph construction variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricMode {
    /// Every mention is a node; coreferent mentions are SIMULTANEOUS.
    SemEval,
    /// Coreferent mentions are linked by IDENTITY, which is never reduced.
    Strict,
    /// Each row collapses to a single event-type node.
    Relaxed,
}

impl MetricMode {
    pub const ALL: [MetricMode; 3] = [MetricMode::SemEval, MetricMode::Strict, MetricMode::Relaxed];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricMode::SemEval => "semeval",
            MetricMode::Strict => "strict",
            MetricMode::Relaxed => "relaxed",
        }
    }
}

impl fmt::Display for MetricMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "semeval" => Ok(MetricMode::SemEval),
            "strict" => Ok(MetricMode::Strict),
            "relaxed" => Ok(MetricMode::Relaxed),
            other => Err(format!("unknown metric `{other}` (semeval|strict|relaxed)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    /// A normalized anchor value.
    Timex(String),
    Event(MentionRef),
    /// A collapsed row (relaxed mode).
    EventType(String),
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Timex(v) => write!(f, "TIMEX({v})"),
            NodeId::Event(m) => write!(f, "{m}"),
            NodeId::EventType(k) => write!(f, "TYPE({k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Before,
    Simultaneous,
    Identity,
}

impl Relation {
    pub fn is_symmetric(self) -> bool {
        !matches!(self, Relation::Before)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Before => "BEFORE",
            Relation::Simultaneous => "SIMULTANEOUS",
            Relation::Identity => "IDENTITY",
        }
    }
}

/// A typed edge. Symmetric relations store the smaller node first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub relation: Relation,
    pub source: NodeId,
    pub target: NodeId,
}

impl Edge {
    pub fn new(relation: Relation, a: NodeId, b: NodeId) -> Self {
        let (source, target) = if relation.is_symmetric() && b < a {
            (b, a)
        } else {
            (a, b)
        };
        Self {
            relation,
            source,
            target,
        }
    }

    pub fn before(a: NodeId, b: NodeId) -> Self {
        Self::new(Relation::Before, a, b)
    }

    pub fn simultaneous(a: NodeId, b: NodeId) -> Self {
        Self::new(Relation::Simultaneous, a, b)
    }

    pub fn identity(a: NodeId, b: NodeId) -> Self {
        Self::new(Relation::Identity, a, b)
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {})", self.relation.as_str(), self.source, self.target)
    }
}

/// Nodes and typed edges over event mentions, event types and anchors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TemporalGraph {
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
}

impl TemporalGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::new();
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    pub fn add_node(&mut self, node: NodeId) {
        self.nodes.insert(node);
    }

    /// Inserts `edge` and its endpoints. Self-loops are refused.
    pub fn add_edge(&mut self, edge: Edge) -> bool {
        if edge.is_self_loop() {
            return false;
        }
        self.nodes.insert(edge.source.clone());
        self.nodes.insert(edge.target.clone());
        self.edges.insert(edge)
    }

    pub fn remove_edge(&mut self, edge: &Edge) -> bool {
        self.edges.remove(edge)
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    /// Edges in (relation, source, target) order.
    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Number of edges of `self` also present in `other`.
    pub fn intersection_count(&self, other: &TemporalGraph) -> usize {
        self.edges.iter().filter(|e| other.contains(e)).count()
    }
}

/// Relaxed-mode label of a row: its smallest mention.
pub(crate) fn row_label(t: &Timeline, row: usize) -> String {
    t.rows[row]
        .mentions
        .iter()
        .min()
        .map(ToString::to_string)
        .unwrap_or_default()
}

/// Builds the temporal graph of a timeline.
///
/// Every mention (or, in relaxed mode, every row) is SIMULTANEOUS with the
/// TIMEX node of its anchor. Nodes in rows of lower ordinal are BEFORE
/// nodes in rows of higher ordinal; nodes sharing an ordinal are
/// SIMULTANEOUS, except same-row mentions in strict mode, which are
/// IDENTITY.
pub fn timeline_to_graph(t: &Timeline, mode: MetricMode) -> TemporalGraph {
    graph_with_labels(t, mode, |row| row_label(t, row))
}

pub(crate) fn graph_with_labels(t: &Timeline, mode: MetricMode, label: impl Fn(usize) -> String) -> TemporalGraph {
    let mut g = TemporalGraph::new();
    let timex = |i: usize| NodeId::Timex(t.rows[i].anchor.to_string());

    if mode == MetricMode::Relaxed {
        let nodes: Vec<NodeId> = (0..t.rows.len()).map(|i| NodeId::EventType(label(i))).collect();
        for (i, n) in nodes.iter().enumerate() {
            g.add_edge(Edge::simultaneous(n.clone(), timex(i)));
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                g.add_edge(relate(t.rows[i].ordinal, t.rows[j].ordinal, &nodes[i], &nodes[j]));
            }
        }
        return g;
    }

    let mentions: Vec<(usize, NodeId)> = t
        .rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.mentions.iter().map(move |m| (i, NodeId::Event(m.clone()))))
        .collect();
    for (row, node) in &mentions {
        g.add_edge(Edge::simultaneous(node.clone(), timex(*row)));
    }
    for (a, (ra, na)) in mentions.iter().enumerate() {
        for (rb, nb) in &mentions[a + 1..] {
            let edge = if ra == rb && mode == MetricMode::Strict {
                Edge::identity(na.clone(), nb.clone())
            } else {
                relate(t.rows[*ra].ordinal, t.rows[*rb].ordinal, na, nb)
            };
            g.add_edge(edge);
        }
    }
    g
}

fn relate(oa: u32, ob: u32, a: &NodeId, b: &NodeId) -> Edge {
    use std::cmp::Ordering::*;
    match oa.cmp(&ob) {
        Less => Edge::before(a.clone(), b.clone()),
        Greater => Edge::before(b.clone(), a.clone()),
        Equal => Edge::simultaneous(a.clone(), b.clone()),
    }
}
