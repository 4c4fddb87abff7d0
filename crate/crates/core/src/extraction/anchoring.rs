use std::collections::{BTreeMap, HashMap};

use crate::anchor::TimeAnchor;
use crate::corpus::{AnnotatedDocument, PosClass, Tense, TimexType, TlinkRelation};

use super::{event_for, is_temporal_role, AnchorSource, AnchoredEvent};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplicitAnchor {
    pub anchor: TimeAnchor,
    pub source: AnchorSource,
}

/// Explicit anchors for `events`: a SIMULTANEOUS temporal link to a DATE
/// timex (either direction), else a temporal role filled by a DATE timex.
/// The link takes priority when both exist. Events without evidence are
/// absent from the map.
pub fn explicit_anchors(doc: &AnnotatedDocument, events: &[String]) -> BTreeMap<String, ExplicitAnchor> {
    let date_value = |id: &str| {
        doc.timex(id)
            .filter(|t| t.timex_type == TimexType::Date)
            .map(|t| t.value)
    };

    let mut out = BTreeMap::new();
    for pred_id in events {
        let Some(pred) = doc.predicate(pred_id) else {
            continue;
        };
        let via_tlink = doc
            .tlinks
            .iter()
            .filter(|l| l.relation == TlinkRelation::Simultaneous)
            .find_map(|l| {
                if l.source == *pred_id {
                    date_value(&l.target)
                } else if l.target == *pred_id {
                    date_value(&l.source)
                } else {
                    None
                }
            });
        let via_role = || {
            pred.roles
                .iter()
                .filter(|(label, _)| is_temporal_role(label))
                .find_map(|(_, filler)| date_value(filler))
        };
        let found = match via_tlink {
            Some(anchor) => Some(ExplicitAnchor {
                anchor,
                source: AnchorSource::ExplicitTlink,
            }),
            None => via_role().map(|anchor| ExplicitAnchor {
                anchor,
                source: AnchorSource::ExplicitArgTmp,
            }),
        };
        if let Some(found) = found {
            out.insert(pred_id.clone(), found);
        }
    }
    out
}

/// Running default anchor per tense.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefaultAnchorState {
    defaults: HashMap<Tense, TimeAnchor>,
}

impl DefaultAnchorState {
    pub fn get(&self, tense: Tense) -> Option<TimeAnchor> {
        self.defaults.get(&tense).copied()
    }

    pub fn set(&mut self, tense: Tense, anchor: TimeAnchor) {
        self.defaults.insert(tense, anchor);
    }

    pub fn tenses(&self) -> impl Iterator<Item = Tense> + '_ {
        self.defaults.keys().copied()
    }
}

/// Implicit anchoring over one document's events of one entity, in
/// document order.
///
/// An explicit anchor is kept and becomes the default for its tense. An
/// event without one inherits the default of its tense, or else takes the
/// document creation time, which then becomes that tense's default.
/// Nominal predicates carry no tense and only keep explicit anchors.
pub fn dlt_anchors(
    doc: &AnnotatedDocument,
    events: &[String],
    explicit: &BTreeMap<String, ExplicitAnchor>,
) -> Vec<AnchoredEvent> {
    let mut defaults = DefaultAnchorState::default();
    let mut out = Vec::with_capacity(events.len());
    for pred_id in events {
        let Some(pred) = doc.predicate(pred_id) else {
            continue;
        };
        let (anchor, source) = if let Some(e) = explicit.get(pred_id) {
            if pred.pos == PosClass::Verbal {
                defaults.set(pred.tense, e.anchor);
            }
            (Some(e.anchor), e.source)
        } else if pred.pos == PosClass::Nominal {
            (None, AnchorSource::None)
        } else if let Some(inherited) = defaults.get(pred.tense) {
            (Some(inherited), AnchorSource::Inherited)
        } else {
            defaults.set(pred.tense, doc.dct);
            (Some(doc.dct), AnchorSource::DctFallback)
        };
        out.extend(event_for(doc, pred_id, anchor, source));
    }
    out
}
