use std::collections::BTreeSet;

use crate::corpus::{AnnotatedDocument, IdKind};
use crate::resources::{entity_key, ResourceTables};

use super::TargetEntity;

/// Agent or patient role labels across the PropBank and AnCora inventories.
pub fn is_core_argument(label: &str) -> bool {
    matches!(label.to_ascii_uppercase().as_str(), "ARG0" | "ARG1" | "A0" | "A1")
}

pub fn is_temporal_role(label: &str) -> bool {
    matches!(
        label.to_ascii_uppercase().as_str(),
        "ARG-TMP" | "ARGM-TMP" | "AM-TMP" | "ARGM_TMP"
    )
}

/// Mentions of `target` in `doc`: linked mentions resolving to the target's
/// entity, plus mentions whose head wordform equals the target head
/// (case-insensitive), closed under the document's coreference chains.
pub fn find_target_mentions(
    doc: &AnnotatedDocument,
    target: &TargetEntity,
    tables: &ResourceTables,
) -> BTreeSet<String> {
    let index = doc.index();
    let target_key = target.kb_uri.as_deref().map(|u| entity_key(u, tables));
    let head = target.head.to_lowercase();

    let mut found: BTreeSet<String> = doc
        .entity_mentions
        .iter()
        .filter(|m| {
            let linked = match (&target_key, &m.ned_link) {
                (Some(t), Some(link)) => entity_key(link, tables) == *t,
                _ => false,
            };
            let head_match = !head.is_empty() && index.token_surface(&m.head).is_some_and(|s| s.to_lowercase() == head);
            linked || head_match
        })
        .map(|m| m.id.clone())
        .collect();

    for chain in &doc.coref_chains {
        if chain.iter().any(|id| found.contains(id)) {
            for id in chain {
                if index.kind(id) == Some(IdKind::Mention) {
                    found.insert(id.clone());
                }
            }
        }
    }
    found
}

/// A selected predicate and the role through which the target fills it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectedEvent {
    pub pred_id: String,
    pub role: Option<String>,
    pub filler: Option<String>,
}

/// Predicates with a target mention as agent or patient, not negated and
/// with no modal other than `will`, in document order.
pub fn select_events(doc: &AnnotatedDocument, target_mentions: &BTreeSet<String>) -> Vec<String> {
    select_events_with_roles(doc, target_mentions)
        .into_iter()
        .map(|s| s.pred_id)
        .collect()
}

pub fn select_events_with_roles(doc: &AnnotatedDocument, target_mentions: &BTreeSet<String>) -> Vec<SelectedEvent> {
    let index = doc.index();
    let mut selected: Vec<_> = doc
        .predicates
        .iter()
        .filter(|p| !p.negated)
        .filter(|p| p.modal.as_deref().is_none_or(|m| m.eq_ignore_ascii_case("will")))
        .filter_map(|p| {
            // roles iterate in label order, so ARG0/A0 wins over ARG1/A1
            let (role, filler) = p
                .roles
                .iter()
                .find(|(label, target)| is_core_argument(label) && target_mentions.contains(*target))?;
            let key = (
                p.sentence,
                index.span_range(&p.span).unwrap_or((usize::MAX, usize::MAX)),
            );
            Some((
                key,
                SelectedEvent {
                    pred_id: p.id.clone(),
                    role: Some(role.clone()),
                    filler: Some(filler.clone()),
                },
            ))
        })
        .collect();
    selected.sort_by_key(|a| a.0);
    selected.into_iter().map(|(_, s)| s).collect()
}
