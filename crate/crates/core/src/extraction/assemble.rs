use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::corpus::{AnnotatedDocument, IdKind};
use crate::error::ExtractionError;
use crate::timeline::{Timeline, TimelineRow};

use super::AnchoredEvent;

/// Within-language event coreference as an equivalence over
/// `(doc_id, pred_id)` pairs. The default is the identity relation.
#[derive(Debug, Clone, Default)]
pub struct EventCoref {
    classes: HashMap<(String, String), usize>,
}

impl EventCoref {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Chains of predicate ids found in the documents' coreference layer.
    pub fn from_documents<'a>(docs: impl IntoIterator<Item = &'a AnnotatedDocument>) -> Self {
        let mut coref = Self::default();
        let mut next = 0;
        for doc in docs {
            let index = doc.index();
            for chain in &doc.coref_chains {
                let preds: Vec<&String> = chain
                    .iter()
                    .filter(|id| index.kind(id) == Some(IdKind::Predicate))
                    .collect();
                if preds.len() < 2 {
                    continue;
                }
                for p in preds {
                    coref.classes.insert((doc.doc_id.clone(), p.clone()), next);
                }
                next += 1;
            }
        }
        coref
    }

    fn class(&self, doc_id: &str, pred_id: &str) -> Option<usize> {
        self.classes.get(&(doc_id.to_string(), pred_id.to_string())).copied()
    }
}

/// Orders anchored events into timeline rows.
///
/// Coreferent events share a row, anchored at the anchor of its earliest
/// mention. Rows sort by anchor, ties broken by the document order
/// `(doc_id, sentence, span)` of their earliest mention; equal anchors share
/// an ordinal. Events without an anchor are rejected.
pub fn build_timeline(target: &str, events: &[AnchoredEvent], coref: &EventCoref) -> Result<Timeline, ExtractionError> {
    for e in events {
        if e.anchor.is_none() {
            return Err(ExtractionError::Unanchored {
                doc_id: e.doc_id.clone(),
                pred_id: e.pred_id.clone(),
            });
        }
    }

    let mut order: Vec<usize> = (0..events.len()).collect();
    order.sort_by(|&a, &b| events[a].order_key().cmp(&events[b].order_key()));

    let mut sets = UnionFind::<usize>::new(events.len());
    let mut by_mention = HashMap::new();
    let mut by_class = HashMap::new();
    for &i in &order {
        let e = &events[i];
        // identical mention triples are indistinguishable on a timeline
        if let Some(&j) = by_mention.get(&e.mention()) {
            sets.union(i, j);
        } else {
            by_mention.insert(e.mention(), i);
        }
        if let Some(class) = coref.class(&e.doc_id, &e.pred_id) {
            if let Some(&j) = by_class.get(&class) {
                sets.union(i, j);
            } else {
                by_class.insert(class, i);
            }
        }
    }

    // groups keyed by representative, members in document order
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = HashMap::new();
    for &i in &order {
        let root = sets.find(i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }

    let mut rows: Vec<(usize, TimelineRow)> = groups
        .into_iter()
        .map(|members| {
            let first = members[0];
            let mut mentions = Vec::with_capacity(members.len());
            for &i in &members {
                let m = events[i].mention();
                if !mentions.contains(&m) {
                    mentions.push(m);
                }
            }
            let row = TimelineRow {
                ordinal: 0,
                anchor: events[first].anchor.expect("checked above"),
                mentions,
            };
            (first, row)
        })
        .collect();
    rows.sort_by(|(a, ra), (b, rb)| {
        ra.anchor
            .cmp(&rb.anchor)
            .then_with(|| events[*a].order_key().cmp(&events[*b].order_key()))
    });

    let mut ordinal = 0;
    let mut prev = None;
    let rows = rows
        .into_iter()
        .map(|(_, mut row)| {
            if prev != Some(row.anchor) {
                ordinal += 1;
                prev = Some(row.anchor);
            }
            row.ordinal = ordinal;
            row
        })
        .collect();
    Ok(Timeline {
        target: target.to_string(),
        rows,
    })
}
