//! Target-entity event extraction and time anchoring.
//!
//! The pipeline per document is: find the mentions of the target entity,
//! select the predicates it fills as agent or patient, attach explicit
//! anchors from temporal links and temporal role fillers, and optionally
//! propagate anchors to the remaining verbal events by tense
//! ([`dlt_anchors`]). [`build_timeline`] then orders anchored events into
//! rows.

mod anchoring;
mod assemble;
mod select;

use crate::anchor::TimeAnchor;
use crate::corpus::{AnnotatedDocument, PosClass, Tense};
use crate::resources::ResourceTables;
use crate::timeline::MentionRef;

pub use anchoring::{dlt_anchors, explicit_anchors, DefaultAnchorState, ExplicitAnchor};
pub use assemble::{build_timeline, EventCoref};
pub use select::{
    find_target_mentions, is_core_argument, is_temporal_role, select_events, select_events_with_roles, SelectedEvent,
};

/// An entity whose timeline is extracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetEntity {
    pub name: String,
    pub kb_uri: Option<String>,
    /// Head wordform of the name, e.g. `Jobs` for `Steve Jobs`.
    pub head: String,
}

impl TargetEntity {
    pub fn new(name: impl Into<String>, kb_uri: Option<String>, head: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kb_uri,
            head: head.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnchorSource {
    ExplicitTlink,
    ExplicitArgTmp,
    Inherited,
    DctFallback,
    None,
}

impl AnchorSource {
    pub fn is_explicit(self) -> bool {
        matches!(self, AnchorSource::ExplicitTlink | AnchorSource::ExplicitArgTmp)
    }
}

/// A selected event together with its (possibly absent) time anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredEvent {
    pub doc_id: String,
    pub language: String,
    pub pred_id: String,
    pub sentence: usize,
    /// Document-order token positions of the predicate span.
    pub span: (usize, usize),
    pub extent: String,
    pub sense: String,
    pub pos: PosClass,
    pub tense: Tense,
    pub anchor: Option<TimeAnchor>,
    pub source: AnchorSource,
    /// Role label under which the target fills the predicate.
    pub role: Option<String>,
    /// Mention id of that filler.
    pub filler: Option<String>,
}

impl AnchoredEvent {
    pub fn mention(&self) -> MentionRef {
        MentionRef::new(self.doc_id.clone(), self.sentence, self.extent.clone())
    }

    /// Document order key: document, sentence, token span.
    pub fn order_key(&self) -> (&str, usize, (usize, usize)) {
        (&self.doc_id, self.sentence, self.span)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchoringMode {
    /// Explicit anchors only.
    Explicit,
    /// Explicit anchors plus tense-keyed propagation with DCT fallback.
    Implicit,
}

/// Runs selection and anchoring on one document. Unanchored events are
/// returned with [`AnchorSource::None`]; callers filter them.
pub fn extract_events(
    doc: &AnnotatedDocument,
    target: &TargetEntity,
    tables: &ResourceTables,
    mode: AnchoringMode,
) -> Vec<AnchoredEvent> {
    let mentions = find_target_mentions(doc, target, tables);
    let selected = select_events_with_roles(doc, &mentions);
    anchor_selected(doc, &selected, mode)
}

/// Anchors an already-selected event list.
pub fn anchor_selected(doc: &AnnotatedDocument, selected: &[SelectedEvent], mode: AnchoringMode) -> Vec<AnchoredEvent> {
    let ids: Vec<String> = selected.iter().map(|s| s.pred_id.clone()).collect();
    let explicit = explicit_anchors(doc, &ids);
    let mut events = match mode {
        AnchoringMode::Implicit => dlt_anchors(doc, &ids, &explicit),
        AnchoringMode::Explicit => ids
            .iter()
            .filter_map(|id| {
                let (anchor, source) = match explicit.get(id) {
                    Some(e) => (Some(e.anchor), e.source),
                    None => (None, AnchorSource::None),
                };
                event_for(doc, id, anchor, source)
            })
            .collect(),
    };
    for (event, sel) in events.iter_mut().zip(selected) {
        debug_assert_eq!(event.pred_id, sel.pred_id);
        event.role = sel.role.clone();
        event.filler = sel.filler.clone();
    }
    events
}

pub(crate) fn event_for(
    doc: &AnnotatedDocument,
    pred_id: &str,
    anchor: Option<TimeAnchor>,
    source: AnchorSource,
) -> Option<AnchoredEvent> {
    let index = doc.index();
    let p = doc.predicate(pred_id)?;
    Some(AnchoredEvent {
        doc_id: doc.doc_id.clone(),
        language: doc.language.clone(),
        pred_id: p.id.clone(),
        sentence: p.sentence,
        span: index.span_range(&p.span).unwrap_or((0, 0)),
        extent: index.span_text(&p.span).unwrap_or_default(),
        sense: p.sense.clone(),
        pos: p.pos,
        tense: p.tense,
        anchor,
        source,
        role: None,
        filler: None,
    })
}
