//! Cross-lingual event coreference and timeline merging.
//!
//! Two events in different languages corefer when their target-entity
//! fillers resolve to the same interlingual entity, the roles they fill are
//! aligned in the predicate matrix, and their anchors are identical.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::anchor::TimeAnchor;
use crate::corpus::{AnnotatedDocument, IdKind};
use crate::extraction::AnchoredEvent;
use crate::resources::{align_roles, resolve_entity, ResourceTables, RoleKey};
use crate::timeline::{MentionRef, Timeline, TimelineRow};

/// What the coreference test looks at for one anchored event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventContext {
    pub language: String,
    pub sense: String,
    pub role: String,
    /// Interlingual id of the entity filling `role`.
    pub entity: Option<String>,
    pub anchor: TimeAnchor,
}

/// Context of an anchored event; `None` for unanchored events or events
/// without a recorded filler role.
///
/// The entity comes from the filler's own link, or failing that from the
/// first linked mention in the filler's coreference chain.
pub fn event_context(doc: &AnnotatedDocument, event: &AnchoredEvent, tables: &ResourceTables) -> Option<EventContext> {
    let anchor = event.anchor?;
    let role = event.role.clone()?;
    let filler = event.filler.as_deref()?;

    let index = doc.index();
    let resolve = |id: &str| {
        doc.mention(id)
            .and_then(|m| m.ned_link.as_deref())
            .and_then(|uri| resolve_entity(uri, tables))
    };
    let entity = resolve(filler).or_else(|| {
        doc.coref_chains
            .iter()
            .filter(|chain| chain.iter().any(|id| id == filler))
            .flatten()
            .filter(|id| index.kind(id) == Some(IdKind::Mention))
            .find_map(|id| resolve(id))
    });
    Some(EventContext {
        language: event.language.clone(),
        sense: event.sense.clone(),
        role,
        entity,
        anchor,
    })
}

/// The three-condition test. Same-language pairs are never coreferent here.
pub fn crosslingual_coreferent(a: &EventContext, b: &EventContext, tables: &ResourceTables) -> bool {
    if a.language == b.language {
        return false;
    }
    let same_entity = matches!((&a.entity, &b.entity), (Some(x), Some(y)) if x == y);
    same_entity
        && align_roles(
            RoleKey::new(&a.language, &a.sense, &a.role),
            RoleKey::new(&b.language, &b.sense, &b.role),
            &tables.predmatrix,
        )
        && a.anchor == b.anchor
}

/// A per-language timeline and the contexts of its mentions. Mentions
/// without a context never merge across languages.
#[derive(Debug, Clone)]
pub struct LanguageTimeline {
    pub timeline: Timeline,
    pub contexts: HashMap<MentionRef, EventContext>,
}

impl LanguageTimeline {
    pub fn without_contexts(timeline: Timeline) -> Self {
        Self {
            timeline,
            contexts: HashMap::new(),
        }
    }
}

/// Merges per-language timelines into one.
///
/// Rows stay intact; rows of different inputs are joined when any pair of
/// their mentions is cross-lingually coreferent, transitively. Merged rows
/// sort by anchor, then by input position and row position of their
/// earliest member; equal anchors share an ordinal.
pub fn merge_timelines(target: &str, inputs: &[LanguageTimeline], tables: &ResourceTables) -> Timeline {
    let slots: Vec<(usize, usize)> = inputs
        .iter()
        .enumerate()
        .flat_map(|(i, lt)| (0..lt.timeline.rows.len()).map(move |r| (i, r)))
        .collect();
    let mut sets = UnionFind::<usize>::new(slots.len());

    // only events sharing entity and anchor can corefer
    let mut buckets: HashMap<(&str, TimeAnchor), Vec<(usize, &EventContext)>> = HashMap::new();
    for (k, &(i, r)) in slots.iter().enumerate() {
        for m in &inputs[i].timeline.rows[r].mentions {
            if let Some(ctx) = inputs[i].contexts.get(m) {
                if let Some(entity) = &ctx.entity {
                    buckets.entry((entity, ctx.anchor)).or_default().push((k, ctx));
                }
            }
        }
    }
    for bucket in buckets.values() {
        for (n, (ka, a)) in bucket.iter().enumerate() {
            for (kb, b) in &bucket[n + 1..] {
                if slots[*ka].0 != slots[*kb].0 && crosslingual_coreferent(a, b, tables) {
                    sets.union(*ka, *kb);
                }
            }
        }
    }

    let key = |k: usize| {
        let (i, r) = slots[k];
        (inputs[i].timeline.rows[r].anchor, i, r)
    };
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for k in 0..slots.len() {
        groups.entry(sets.find(k)).or_default().push(k);
    }
    let mut groups: Vec<Vec<usize>> = groups.into_values().collect();
    for g in &mut groups {
        g.sort_by_key(|&k| key(k));
    }
    groups.sort_by_key(|g| key(g[0]));

    let mut rows = Vec::with_capacity(groups.len());
    let mut ordinal = 0;
    let mut prev = None;
    for g in groups {
        let (anchor, _, _) = key(g[0]);
        if prev != Some(anchor) {
            ordinal += 1;
            prev = Some(anchor);
        }
        let mut mentions: Vec<MentionRef> = Vec::new();
        for k in g {
            let (i, r) = slots[k];
            for m in &inputs[i].timeline.rows[r].mentions {
                if !mentions.contains(m) {
                    mentions.push(m.clone());
                }
            }
        }
        rows.push(TimelineRow {
            ordinal,
            anchor,
            mentions,
        });
    }
    Timeline {
        target: target.to_string(),
        rows,
    }
}
