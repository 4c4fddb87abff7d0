//! Tabulated timelines, one file per target entity.
//!
//! ```text
//! <entity name>
//! <ordinal>\t<anchor>\t<doc_id>#<sentence>#<extent>[\t<doc_id>#<sentence>#<extent>...]
//! ```
//!
//! Each row is one event instance; extra columns are further mentions of the
//! same event. Rows sharing an anchor share an ordinal, and ordinals never
//! decrease down the file.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::anchor::TimeAnchor;
use crate::corpus::split_doc_id;
use crate::error::TimelineError;

/// One event mention: document, sentence number and surface extent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MentionRef {
    pub doc_id: String,
    pub sentence: usize,
    pub extent: String,
}

impl MentionRef {
    pub fn new(doc_id: impl Into<String>, sentence: usize, extent: impl Into<String>) -> Self {
        Self {
            doc_id: doc_id.into(),
            sentence,
            extent: extent.into(),
        }
    }

    /// Language prefix of the document id.
    pub fn language(&self) -> &str {
        self.doc_id.split_once('-').map_or("", |(l, _)| l)
    }
}

impl fmt::Display for MentionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}#{}", self.doc_id, self.sentence, self.extent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimelineRow {
    pub ordinal: u32,
    pub anchor: TimeAnchor,
    pub mentions: Vec<MentionRef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Timeline {
    pub target: String,
    pub rows: Vec<TimelineRow>,
}

impl Timeline {
    pub fn empty(target: impl Into<String>) -> Self {
        Self {
            target: target.into(),
            rows: Vec::new(),
        }
    }

    pub fn mentions(&self) -> impl Iterator<Item = &MentionRef> {
        self.rows.iter().flat_map(|r| r.mentions.iter())
    }

    pub fn mention_count(&self) -> usize {
        self.rows.iter().map(|r| r.mentions.len()).sum()
    }

    /// Anchor of every mention.
    pub fn anchors_by_mention(&self) -> HashMap<&MentionRef, TimeAnchor> {
        self.rows
            .iter()
            .flat_map(|r| r.mentions.iter().map(move |m| (m, r.anchor)))
            .collect()
    }

    pub fn doc_ids(&self) -> BTreeSet<&str> {
        self.mentions().map(|m| m.doc_id.as_str()).collect()
    }

    /// Keeps only mentions from `docs`, drops rows left empty and renumbers
    /// ordinals compactly.
    pub fn restrict_to_docs(&self, docs: &HashSet<&str>) -> Timeline {
        let rows = self
            .rows
            .iter()
            .filter_map(|r| {
                let mentions: Vec<_> = r
                    .mentions
                    .iter()
                    .filter(|m| docs.contains(m.doc_id.as_str()))
                    .cloned()
                    .collect();
                (!mentions.is_empty()).then_some(TimelineRow {
                    ordinal: r.ordinal,
                    anchor: r.anchor,
                    mentions,
                })
            })
            .collect();
        let mut t = Timeline {
            target: self.target.clone(),
            rows,
        };
        t.renumber();
        t
    }

    /// Rewrites ordinals as 1, 2, ... preserving ties.
    pub fn renumber(&mut self) {
        let mut next = 0;
        let mut prev = None;
        for row in &mut self.rows {
            if prev != Some(row.ordinal) {
                next += 1;
                prev = Some(row.ordinal);
            }
            row.ordinal = next;
        }
    }

    /// Checks the row invariants; returns the first violation found.
    pub fn check(&self) -> Result<(), TimelineError> {
        let mut by_anchor: HashMap<TimeAnchor, u32> = HashMap::new();
        let mut by_ordinal: HashMap<u32, TimeAnchor> = HashMap::new();
        let mut seen = HashSet::new();
        let mut prev = 0;
        for (i, row) in self.rows.iter().enumerate() {
            let line = i + 2;
            let err = |message: String| TimelineError { line, message };
            if row.ordinal == 0 {
                return Err(err("ordinals start at 1".into()));
            }
            if row.ordinal < prev {
                return Err(err(format!("ordinal {} follows ordinal {prev}", row.ordinal)));
            }
            prev = row.ordinal;
            if let Some(o) = by_anchor.insert(row.anchor, row.ordinal) {
                if o != row.ordinal {
                    return Err(err(format!("anchor {} already has ordinal {o}", row.anchor)));
                }
            }
            if let Some(a) = by_ordinal.insert(row.ordinal, row.anchor) {
                if a != row.anchor {
                    return Err(err(format!("ordinal {} already has anchor {a}", row.ordinal)));
                }
            }
            if row.mentions.is_empty() {
                return Err(err("row has no mentions".into()));
            }
            for m in &row.mentions {
                check_mention(m).map_err(&err)?;
                if !seen.insert(m) {
                    return Err(err(format!("mention {m} appears twice")));
                }
            }
        }
        Ok(())
    }
}

fn check_mention(m: &MentionRef) -> Result<(), String> {
    if split_doc_id(&m.doc_id).is_none() {
        return Err(format!("document id `{}` is not `<lang>-<digits>`", m.doc_id));
    }
    if m.sentence == 0 {
        return Err("sentence numbers start at 1".into());
    }
    if m.extent.is_empty() || m.extent.contains(['\t', '#', '\n']) {
        return Err(format!("invalid extent `{}`", m.extent));
    }
    Ok(())
}

fn parse_mention(raw: &str) -> Result<MentionRef, String> {
    let parts: Vec<&str> = raw.split('#').collect();
    let [doc_id, sentence, extent] = parts[..] else {
        return Err(format!("mention `{raw}` is not `<doc_id>#<sentence>#<extent>`"));
    };
    let sentence = sentence
        .parse()
        .map_err(|_| format!("mention `{raw}` has a non-numeric sentence"))?;
    let m = MentionRef::new(doc_id, sentence, extent);
    check_mention(&m)?;
    Ok(m)
}

/// Parses a timeline file. Errors carry 1-based line numbers.
pub fn parse_timeline(text: &str) -> Result<Timeline, TimelineError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    let target = match lines.next() {
        Some((_, name)) if !name.trim().is_empty() && !name.contains('\t') => name.to_string(),
        _ => {
            return Err(TimelineError {
                line: 1,
                message: "first line must be the target entity name".into(),
            })
        }
    };
    let mut rows = Vec::new();
    for (line, raw) in lines {
        let err = |message: String| TimelineError { line, message };
        let cols: Vec<&str> = raw.split('\t').collect();
        if cols.len() < 3 {
            return Err(err("row needs an ordinal, an anchor and at least one mention".into()));
        }
        let ordinal: u32 = cols[0]
            .parse()
            .map_err(|_| err(format!("ordinal `{}` is not a positive integer", cols[0])))?;
        let anchor: TimeAnchor = cols[1]
            .parse()
            .map_err(|_| err(format!("malformed anchor `{}`", cols[1])))?;
        let mentions = cols[2..]
            .iter()
            .map(|c| parse_mention(c).map_err(&err))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(TimelineRow {
            ordinal,
            anchor,
            mentions,
        });
    }
    let timeline = Timeline { target, rows };
    timeline.check()?;
    Ok(timeline)
}

/// Canonical text: every line newline-terminated, anchors at native
/// granularity.
pub fn serialize_timeline(t: &Timeline) -> String {
    let mut out = String::with_capacity(64 * (t.rows.len() + 1));
    out.push_str(&t.target);
    out.push('\n');
    for row in &t.rows {
        out.push_str(&row.ordinal.to_string());
        out.push('\t');
        out.push_str(&row.anchor.to_string());
        for m in &row.mentions {
            out.push('\t');
            out.push_str(&m.to_string());
        }
        out.push('\n');
    }
    out
}

/// File stem for a target entity: lowercase alphanumerics joined by `_`.
pub fn entity_slug(name: &str) -> String {
    let mut slug = String::with_capacity(name.len());
    for c in name.chars().flat_map(char::to_lowercase) {
        if c.is_alphanumeric() {
            slug.push(c);
        } else if !slug.ends_with('_') && !slug.is_empty() {
            slug.push('_');
        }
    }
    while slug.ends_with('_') {
        slug.pop();
    }
    slug
}

pub const TIMELINE_EXTENSION: &str = "timeline";
