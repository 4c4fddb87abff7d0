use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::manifest::{Corpus, GoldTask};
use crate::corpus::AnnotatedDocument;
use crate::error::HarnessError;
use crate::extraction::{
    anchor_selected, find_target_mentions, select_events_with_roles, AnchoringMode, SelectedEvent,
};
use crate::resources::ResourceTables;
use crate::timeline::{entity_slug, MentionRef, Timeline};

/// Annotation layers extraction may read. Disabled layers behave as absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuleMask {
    /// Predicates and roles.
    pub srl: bool,
    /// Entity links. Without them no target filter is applied: every
    /// predicate is a candidate.
    pub ner_ned: bool,
    /// Coreference chains.
    pub cr: bool,
    /// Time expressions and temporal links. When enabled only anchored
    /// events count as captured.
    pub time: bool,
}

impl ModuleMask {
    pub const ALL: ModuleMask = ModuleMask {
        srl: true,
        ner_ned: true,
        cr: true,
        time: true,
    };

    pub const SRL_ONLY: ModuleMask = ModuleMask {
        srl: true,
        ner_ned: false,
        cr: false,
        time: false,
    };
}

impl fmt::Display for ModuleMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [
            (self.srl, "srl"),
            (self.ner_ned, "ner"),
            (self.cr, "cr"),
            (self.time, "time"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for ModuleMask {
    type Err = String;

    /// Comma-separated layer names: `srl`, `ner` (or `ned`), `cr`, `time`;
    /// `all` enables everything.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut mask = ModuleMask {
            srl: false,
            ner_ned: false,
            cr: false,
            time: false,
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part.to_ascii_lowercase().as_str() {
                "all" => mask = ModuleMask::ALL,
                "srl" => mask.srl = true,
                "ner" | "ned" | "ner+ned" => mask.ner_ned = true,
                "cr" | "coref" => mask.cr = true,
                "time" | "tei" | "ten" | "tre" => mask.time = true,
                other => return Err(format!("unknown layer `{other}` (srl|ner|cr|time|all)")),
            }
        }
        Ok(mask)
    }
}

/// Copy of `doc` without the layers disabled in `mask`.
pub fn strip_layers(doc: &AnnotatedDocument, mask: ModuleMask) -> AnnotatedDocument {
    let mut d = doc.clone();
    if !mask.srl {
        d.predicates.clear();
    }
    if !mask.ner_ned {
        for m in &mut d.entity_mentions {
            m.ned_link = None;
        }
    }
    if !mask.cr {
        d.coref_chains.clear();
    }
    d
}

/// Event mentions a masked pipeline produces for any manifest target.
pub fn captured_mentions(
    corpus: &Corpus,
    tables: &ResourceTables,
    mask: ModuleMask,
    language: Option<&str>,
) -> BTreeSet<MentionRef> {
    let mut out = BTreeSet::new();
    for doc in corpus.docs_in(language) {
        let doc = strip_layers(doc, mask);
        let candidates: Vec<Vec<SelectedEvent>> = if mask.ner_ned {
            corpus
                .manifest
                .targets
                .iter()
                .map(|t| select_events_with_roles(&doc, &find_target_mentions(&doc, t, tables)))
                .collect()
        } else {
            let index = doc.index();
            let mut all: Vec<_> = doc.predicates.iter().collect();
            all.sort_by_key(|p| (p.sentence, index.span_range(&p.span)));
            vec![all
                .into_iter()
                .map(|p| SelectedEvent {
                    pred_id: p.id.clone(),
                    role: None,
                    filler: None,
                })
                .collect()]
        };
        for selected in candidates {
            for e in anchor_selected(&doc, &selected, AnchoringMode::Implicit) {
                if !mask.time || e.anchor.is_some() {
                    out.insert(e.mention());
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaptureRow {
    pub task: String,
    pub gold_mentions: usize,
    pub captured: usize,
}

impl CaptureRow {
    pub fn percent(&self) -> Option<f64> {
        (self.gold_mentions > 0).then(|| 100.0 * self.captured as f64 / self.gold_mentions as f64)
    }
}

/// Share of gold mentions present in `system`, ignoring order and anchors.
pub fn capture_counts(system: &BTreeSet<MentionRef>, gold: &[Timeline]) -> (usize, usize) {
    let gold: BTreeSet<&MentionRef> = gold.iter().flat_map(Timeline::mentions).collect();
    (gold.iter().filter(|m| system.contains(**m)).count(), gold.len())
}

/// Captured gold mentions per gold task of the manifest.
pub fn event_capture_stats(
    corpus: &Corpus,
    tables: &ResourceTables,
    mask: ModuleMask,
) -> Result<Vec<CaptureRow>, HarnessError> {
    corpus
        .manifest
        .gold
        .keys()
        .map(|task| {
            let gold = corpus.gold(task)?;
            let produced = captured_mentions(corpus, tables, mask, task.language());
            let (captured, gold_mentions) = capture_counts(&produced, &gold);
            Ok(CaptureRow {
                task: task.to_string(),
                gold_mentions,
                captured,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct AccuracyRow {
    pub timeline: String,
    /// System mentions found in the gold timeline.
    pub matched: usize,
    /// Of those, mentions whose anchor equals the gold anchor.
    pub correct: usize,
}

impl AccuracyRow {
    /// `None` when nothing matched.
    pub fn accuracy(&self) -> Option<f64> {
        (self.matched > 0).then(|| self.correct as f64 / self.matched as f64)
    }
}

/// Per-timeline anchor accuracy plus a final `ALL` row pooling the counts.
/// Timelines pair by position.
pub fn anchor_accuracy(system: &[Timeline], gold: &[Timeline]) -> Vec<AccuracyRow> {
    let mut rows: Vec<AccuracyRow> = system
        .iter()
        .zip(gold)
        .map(|(s, g)| {
            let gold_anchor = g.anchors_by_mention();
            let mut row = AccuracyRow {
                timeline: entity_slug(&g.target),
                matched: 0,
                correct: 0,
            };
            for (m, anchor) in s.anchors_by_mention() {
                if let Some(expected) = gold_anchor.get(m) {
                    row.matched += 1;
                    row.correct += usize::from(*expected == anchor);
                }
            }
            row
        })
        .collect();
    let total = AccuracyRow {
        timeline: "ALL".into(),
        matched: rows.iter().map(|r| r.matched).sum(),
        correct: rows.iter().map(|r| r.correct).sum(),
    };
    rows.push(total);
    rows
}

pub fn capture_csv(rows: &[CaptureRow], mask: ModuleMask) -> String {
    let mut out = String::from("task,layers,gold_mentions,captured,percent\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.task,
            mask.to_string().replace(',', "+"),
            r.gold_mentions,
            r.captured,
            r.percent().map_or("NA".into(), |p| format!("{p:.2}"))
        ));
    }
    out
}

/// Accuracy rows for several tasks, keyed by task name.
pub fn accuracy_csv(tables: &[(GoldTask, Vec<AccuracyRow>)]) -> String {
    let mut out = String::from("task,timeline,matched,correct,accuracy\n");
    for (task, rows) in tables {
        for r in rows {
            out.push_str(&format!(
                "{task},{},{},{},{}\n",
                r.timeline,
                r.matched,
                r.correct,
                r.accuracy().map_or("NA".into(), |a| format!("{a:.4}"))
            ));
        }
    }
    out
}
