//! Temporal closure over BEFORE / SIMULTANEOUS / IDENTITY.
//!
//! Closure rules: SIMULTANEOUS and IDENTITY are symmetric and transitive,
//! IDENTITY entails SIMULTANEOUS, BEFORE is transitive, and BEFORE composes
//! with SIMULTANEOUS on either side. Self-relations are never produced.
//!
//! The closure is computed by merging SIMULTANEOUS classes and taking
//! reachability over the class graph of BEFORE edges.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use super::graph::{Edge, NodeId, Relation, TemporalGraph};
use crate::error::ScoreError;

/// Dense view of a graph: node indices and per-relation adjacency.
pub(crate) struct Indexed<'a> {
    pub nodes: Vec<&'a NodeId>,
    pub index: HashMap<&'a NodeId, usize>,
}

impl<'a> Indexed<'a> {
    pub fn new(g: &'a TemporalGraph) -> Self {
        let nodes: Vec<&NodeId> = g.nodes().iter().collect();
        let index = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        Self { nodes, index }
    }

    pub fn ends(&self, e: &Edge) -> (usize, usize) {
        (self.index[&e.source], self.index[&e.target])
    }
}

struct Classes {
    identity: UnionFind<usize>,
    simultaneous: UnionFind<usize>,
}

fn classes(g: &TemporalGraph, ix: &Indexed<'_>) -> Classes {
    let n = ix.nodes.len();
    let mut identity = UnionFind::new(n);
    let mut simultaneous = UnionFind::new(n);
    for e in g.edges() {
        let (a, b) = ix.ends(e);
        match e.relation {
            Relation::Identity => {
                identity.union(a, b);
                simultaneous.union(a, b);
            }
            Relation::Simultaneous => {
                simultaneous.union(a, b);
            }
            Relation::Before => {}
        }
    }
    Classes { identity, simultaneous }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)] // reported rarely, never stored in bulk
pub enum ConsistencyViolation {
    /// BEFORE between two nodes that are also directly SIMULTANEOUS or
    /// IDENTICAL.
    Contradiction { before: Edge, other: Edge },
    /// Nodes whose BEFORE edges form a cycle once simultaneous nodes are
    /// merged.
    Cycle { nodes: Vec<NodeId> },
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyViolation::Contradiction { before, other } => {
                write!(f, "{before} contradicts {other}")
            }
            ConsistencyViolation::Cycle { nodes } => {
                let names: Vec<String> = nodes.iter().map(ToString::to_string).collect();
                write!(f, "BEFORE cycle through {}", names.join(", "))
            }
        }
    }
}

/// Lists same-pair contradictions and BEFORE cycles. Empty for consistent
/// graphs.
pub fn consistency_check(g: &TemporalGraph) -> Vec<ConsistencyViolation> {
    let ix = Indexed::new(g);
    let cls = classes(g, &ix);
    let mut out = Vec::new();

    let mut flagged = BTreeSet::new();
    for e in g.edges().iter().filter(|e| e.relation == Relation::Before) {
        for rel in [Relation::Simultaneous, Relation::Identity] {
            let other = Edge::new(rel, e.source.clone(), e.target.clone());
            if g.contains(&other) {
                out.push(ConsistencyViolation::Contradiction {
                    before: e.clone(),
                    other,
                });
                flagged.insert(e.clone());
            }
        }
    }

    let mut dag = DiGraph::<usize, ()>::new();
    let mut class_node = HashMap::new();
    let mut class_of = |dag: &mut DiGraph<usize, ()>, node: usize| {
        let root = cls.simultaneous.find(node);
        *class_node.entry(root).or_insert_with(|| dag.add_node(root))
    };
    for i in 0..ix.nodes.len() {
        class_of(&mut dag, i);
    }
    let mut self_loops = BTreeSet::new();
    for e in g.edges() {
        if e.relation != Relation::Before || flagged.contains(e) {
            continue;
        }
        let (a, b) = ix.ends(e);
        let (ca, cb) = (class_of(&mut dag, a), class_of(&mut dag, b));
        if ca == cb {
            self_loops.insert(ca);
        }
        dag.add_edge(ca, cb, ());
    }
    let mut cycles: Vec<Vec<NodeId>> = tarjan_scc(&dag)
        .into_iter()
        .filter(|scc| scc.len() > 1 || self_loops.contains(&scc[0]))
        .map(|scc| {
            let roots: BTreeSet<usize> = scc.iter().map(|c| dag[*c]).collect();
            let mut members: Vec<NodeId> = (0..ix.nodes.len())
                .filter(|&i| roots.contains(&cls.simultaneous.find(i)))
                .map(|i| ix.nodes[i].clone())
                .collect();
            members.sort();
            members
        })
        .collect();
    cycles.sort();
    out.extend(cycles.into_iter().map(|nodes| ConsistencyViolation::Cycle { nodes }));
    out
}

/// Least fixpoint of the closure rules. Fails on inconsistent input.
pub fn closure(g: &TemporalGraph) -> Result<TemporalGraph, ScoreError> {
    if let Some(v) = consistency_check(g).into_iter().next() {
        let cycle = match v {
            ConsistencyViolation::Contradiction { before, .. } => {
                vec![before.source.clone(), before.target, before.source]
            }
            ConsistencyViolation::Cycle { nodes } => nodes,
        };
        return Err(ScoreError::Inconsistent { cycle });
    }

    let ix = Indexed::new(g);
    let cls = classes(g, &ix);
    let n = ix.nodes.len();

    let mut id_members: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut sim_members: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..n {
        id_members.entry(cls.identity.find(i)).or_default().push(i);
        sim_members.entry(cls.simultaneous.find(i)).or_default().push(i);
    }

    let mut out = TemporalGraph::new();
    for node in g.nodes() {
        out.add_node(node.clone());
    }
    let pairs = |members: &Vec<usize>, rel: Relation, out: &mut TemporalGraph| {
        for (k, &a) in members.iter().enumerate() {
            for &b in &members[k + 1..] {
                out.add_edge(Edge::new(rel, ix.nodes[a].clone(), ix.nodes[b].clone()));
            }
        }
    };
    for members in id_members.values() {
        pairs(members, Relation::Identity, &mut out);
    }
    for members in sim_members.values() {
        pairs(members, Relation::Simultaneous, &mut out);
    }

    // BEFORE: reachability over the class graph
    let mut succ: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for e in g.edges().iter().filter(|e| e.relation == Relation::Before) {
        let (a, b) = ix.ends(e);
        succ.entry(cls.simultaneous.find(a))
            .or_default()
            .insert(cls.simultaneous.find(b));
    }
    for (&root, members) in &sim_members {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<usize> = succ.get(&root).into_iter().flatten().copied().collect();
        while let Some(c) = queue.pop_front() {
            if seen.insert(c) {
                queue.extend(succ.get(&c).into_iter().flatten().copied());
            }
        }
        for c in seen {
            for &a in members {
                for &b in &sim_members[&c] {
                    out.add_edge(Edge::before(ix.nodes[a].clone(), ix.nodes[b].clone()));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NodeId {
        NodeId::EventType(s.to_string())
    }

    #[test]
    fn shared_timex_entails_simultaneous() {
        let t = NodeId::Timex("2007-07-08".into());
        let g = TemporalGraph::from_edges([Edge::simultaneous(n("e1"), t.clone()), Edge::simultaneous(n("e2"), t)]);
        assert!(closure(&g).unwrap().contains(&Edge::simultaneous(n("e1"), n("e2"))));
    }

    #[test]
    fn before_is_transitive() {
        let g = TemporalGraph::from_edges([Edge::before(n("a"), n("b")), Edge::before(n("b"), n("c"))]);
        let c = closure(&g).unwrap();
        assert!(c.contains(&Edge::before(n("a"), n("c"))));
        assert_eq!(c.edge_count(), 3);
    }

    #[test]
    fn identity_entails_simultaneous() {
        let g = TemporalGraph::from_edges([Edge::identity(n("a"), n("b")), Edge::before(n("b"), n("c"))]);
        let c = closure(&g).unwrap();
        assert!(c.contains(&Edge::simultaneous(n("a"), n("b"))));
        assert!(c.contains(&Edge::before(n("a"), n("c"))));
    }

    #[test]
    fn two_cycle_is_one_violation() {
        let g = TemporalGraph::from_edges([Edge::before(n("a"), n("b")), Edge::before(n("b"), n("a"))]);
        let v = consistency_check(&g);
        assert_eq!(
            v,
            vec![ConsistencyViolation::Cycle {
                nodes: vec![n("a"), n("b")]
            }]
        );
        assert!(matches!(closure(&g), Err(ScoreError::Inconsistent { .. })));
    }

    #[test]
    fn before_and_simultaneous_is_one_contradiction() {
        let g = TemporalGraph::from_edges([Edge::before(n("a"), n("b")), Edge::simultaneous(n("a"), n("b"))]);
        let v = consistency_check(&g);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], ConsistencyViolation::Contradiction { .. }));
        let err = closure(&g).unwrap_err();
        assert!(err.to_string().contains("TYPE(a)"));
    }

    #[test]
    fn cycle_through_simultaneous_merge() {
        let g = TemporalGraph::from_edges([
            Edge::before(n("a"), n("b")),
            Edge::simultaneous(n("b"), n("c")),
            Edge::before(n("c"), n("a")),
        ]);
        let v = consistency_check(&g);
        assert_eq!(v.len(), 1);
        assert!(matches!(&v[0], ConsistencyViolation::Cycle { nodes } if nodes.len() == 3));
    }
}
