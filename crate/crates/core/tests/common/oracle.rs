//! Brute-force closure and random consistent graphs, independent of the
//! library's closure implementation.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tlx_core::scorer::{Edge, NodeId, Relation, TemporalGraph};

/// Applies the six closure rules until nothing changes.
pub fn naive_closure(g: &TemporalGraph) -> BTreeSet<Edge> {
    // ordered triples; symmetric relations are stored in both directions
    let mut facts: BTreeSet<(Relation, NodeId, NodeId)> = BTreeSet::new();
    for e in g.edges() {
        facts.insert((e.relation, e.source.clone(), e.target.clone()));
    }
    loop {
        let snapshot: Vec<_> = facts.iter().cloned().collect();
        let mut added = Vec::new();
        for (r, a, b) in &snapshot {
            if *r != Relation::Before {
                added.push((*r, b.clone(), a.clone()));
            }
            if *r == Relation::Identity {
                added.push((Relation::Simultaneous, a.clone(), b.clone()));
            }
            for (r2, c, d) in &snapshot {
                if b != c {
                    continue;
                }
                let derived = match (r, r2) {
                    (Relation::Simultaneous, Relation::Simultaneous) => Some(Relation::Simultaneous),
                    (Relation::Identity, Relation::Identity) => Some(Relation::Identity),
                    (Relation::Before, Relation::Before)
                    | (Relation::Before, Relation::Simultaneous)
                    | (Relation::Simultaneous, Relation::Before) => Some(Relation::Before),
                    _ => None,
                };
                if let Some(rel) = derived {
                    added.push((rel, a.clone(), d.clone()));
                }
            }
        }
        let before = facts.len();
        facts.extend(added.into_iter().filter(|(_, a, b)| a != b));
        if facts.len() == before {
            break;
        }
    }
    facts.into_iter().map(|(r, a, b)| Edge::new(r, a, b)).collect()
}

/// A random graph whose relations agree with a random assignment of nodes
/// to time points, so it is always consistent.
pub fn random_consistent_graph(rng: &mut ChaCha8Rng) -> TemporalGraph {
    let n = rng.gen_range(2..=8);
    let nodes: Vec<NodeId> = (0..n)
        .map(|i| {
            if rng.gen_bool(0.3) {
                NodeId::Timex(format!("200{i}"))
            } else {
                NodeId::EventType(format!("e{i}"))
            }
        })
        .collect();
    let points: Vec<u8> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let density = rng.gen_range(0.15..0.6);
    let mut g = TemporalGraph::new();
    for i in 0..n {
        g.add_node(nodes[i].clone());
        for j in 0..n {
            if i == j || !rng.gen_bool(density) {
                continue;
            }
            let (a, b) = (nodes[i].clone(), nodes[j].clone());
            let edge = if points[i] < points[j] {
                Edge::before(a, b)
            } else if points[i] == points[j] && i < j {
                if rng.gen_bool(0.3) {
                    Edge::identity(a, b)
                } else {
                    Edge::simultaneous(a, b)
                }
            } else {
                continue;
            };
            g.add_edge(edge);
        }
    }
    g
}

pub fn random_graphs(seed: u64, count: usize) -> Vec<TemporalGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_consistent_graph(&mut rng)).collect()
}
