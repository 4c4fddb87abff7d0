use std::collections::{HashMap, HashSet, VecDeque};

use super::graph::{Edge, MetricMode, NodeId, Relation, TemporalGraph};

/// Adjacency view used for entailment queries while edges are removed.
#[derive(Default)]
struct Adjacency<'a> {
    /// Symmetric SIMULTANEOUS/IDENTITY neighbours, tagged with the relation.
    sym: HashMap<&'a NodeId, Vec<(&'a NodeId, Relation)>>,
    before: HashMap<&'a NodeId, Vec<&'a NodeId>>,
}

impl<'a> Adjacency<'a> {
    fn insert(&mut self, e: &'a Edge) {
        match e.relation {
            Relation::Before => self.before.entry(&e.source).or_default().push(&e.target),
            rel => {
                self.sym.entry(&e.source).or_default().push((&e.target, rel));
                self.sym.entry(&e.target).or_default().push((&e.source, rel));
            }
        }
    }

    fn remove(&mut self, e: &'a Edge) {
        fn drop_one<T: PartialEq>(v: Option<&mut Vec<T>>, item: &T) {
            if let Some(v) = v {
                if let Some(i) = v.iter().position(|x| x == item) {
                    v.swap_remove(i);
                }
            }
        }
        match e.relation {
            Relation::Before => drop_one(self.before.get_mut(&e.source), &&e.target),
            rel => {
                drop_one(self.sym.get_mut(&e.source), &(&e.target, rel));
                drop_one(self.sym.get_mut(&e.target), &(&e.source, rel));
            }
        }
    }

    /// Whether the closure of the current edges contains `e`.
    fn entails(&self, e: &Edge) -> bool {
        match e.relation {
            Relation::Identity => self.connected(&e.source, &e.target, true),
            Relation::Simultaneous => self.connected(&e.source, &e.target, false),
            Relation::Before => self.precedes(&e.source, &e.target),
        }
    }

    fn connected(&self, from: &NodeId, to: &NodeId, identity_only: bool) -> bool {
        let mut seen: HashSet<&NodeId> = HashSet::new();
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                return true;
            }
            if !seen.insert(x) {
                continue;
            }
            for (y, rel) in self.sym.get(x).into_iter().flatten() {
                if !identity_only || *rel == Relation::Identity {
                    queue.push_back(y);
                }
            }
        }
        false
    }

    // a path from `from` to `to` with at least one BEFORE step, moving freely
    // along symmetric edges
    fn precedes(&self, from: &NodeId, to: &NodeId) -> bool {
        let mut seen: HashSet<(&NodeId, bool)> = HashSet::new();
        let mut queue = VecDeque::from([(from, false)]);
        while let Some((x, after)) = queue.pop_front() {
            if after && x == to {
                return true;
            }
            if !seen.insert((x, after)) {
                continue;
            }
            for (y, _) in self.sym.get(x).into_iter().flatten() {
                queue.push_back((y, after));
            }
            for y in self.before.get(x).into_iter().flatten() {
                queue.push_back((y, true));
            }
        }
        false
    }
}

/// Removes redundant edges greedily, in (relation, source, target) order.
///
/// An edge is dropped when the remaining graph still entails it. In strict
/// mode IDENTITY edges are kept unconditionally. The input is assumed
/// consistent; the result has the same closure.
pub fn reduce(g: &TemporalGraph, mode: MetricMode) -> TemporalGraph {
    let mut adj = Adjacency::default();
    for e in g.edges() {
        adj.insert(e);
    }
    let mut out = g.clone();
    for e in g.edges() {
        if mode == MetricMode::Strict && e.relation == Relation::Identity {
            continue;
        }
        adj.remove(e);
        if adj.entails(e) {
            out.remove_edge(e);
        } else {
            adj.insert(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NodeId {
        NodeId::EventType(s.to_string())
    }

    #[test]
    fn drops_edge_implied_by_shared_timex() {
        let t = NodeId::Timex("2007".into());
        let g = TemporalGraph::from_edges([
            Edge::simultaneous(n("e1"), t.clone()),
            Edge::simultaneous(n("e2"), t.clone()),
            Edge::simultaneous(n("e1"), n("e2")),
        ]);
        let r = reduce(&g, MetricMode::SemEval);
        assert_eq!(r.edge_count(), 2);
    }

    #[test]
    fn strict_keeps_identity() {
        let t = NodeId::Timex("2007".into());
        let g = TemporalGraph::from_edges([
            Edge::simultaneous(n("e1"), t.clone()),
            Edge::simultaneous(n("e2"), t.clone()),
            Edge::identity(n("e1"), n("e2")),
        ]);
        let r = reduce(&g, MetricMode::Strict);
        assert!(r.contains(&Edge::identity(n("e1"), n("e2"))));
        // IDENTITY(e1,e2) plus one timex link entail the other
        assert_eq!(r.edge_count(), 2);
    }

    #[test]
    fn chain_is_unchanged() {
        let g = TemporalGraph::from_edges([Edge::before(n("a"), n("b")), Edge::before(n("b"), n("c"))]);
        assert_eq!(reduce(&g, MetricMode::SemEval), g);
    }

    #[test]
    fn transitive_edge_removed() {
        let g = TemporalGraph::from_edges([
            Edge::before(n("a"), n("b")),
            Edge::before(n("b"), n("c")),
            Edge::before(n("a"), n("c")),
        ]);
        let r = reduce(&g, MetricMode::SemEval);
        assert!(!r.contains(&Edge::before(n("a"), n("c"))));
        assert_eq!(r.edge_count(), 2);
    }
}
