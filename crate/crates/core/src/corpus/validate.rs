use std::collections::HashSet;
use std::fmt;

use super::*;

/// One broken invariant, naming the offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub element: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.element, self.message)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn add(&mut self, element: impl Into<String>, message: impl Into<String>) {
        self.0.push(Violation {
            element: element.into(),
            message: message.into(),
        });
    }
}

/// Checks every document invariant. An empty result means the document is
/// well formed.
pub fn validate_document(doc: &AnnotatedDocument) -> Vec<Violation> {
    let mut r = Report(Vec::new());
    let index = doc.index();

    match split_doc_id(&doc.doc_id) {
        Some((prefix, _)) if prefix == doc.language => {}
        Some(_) => r.add(
            &doc.doc_id,
            format!("id prefix differs from language `{}`", doc.language),
        ),
        None => r.add(&doc.doc_id, "document id is not `<lang>-<digits>`"),
    }
    if !doc.dct.is_day_granular() {
        r.add(
            "dct",
            format!("document creation time `{}` is not a full date", doc.dct),
        );
    }

    let mut ids = HashSet::new();
    let mut check_id = |r: &mut Report, id: &str| {
        if !ids.insert(id.to_string()) {
            r.add(id, "duplicate id");
        }
    };

    let mut last_end: Option<usize> = None;
    for (i, s) in doc.sentences.iter().enumerate() {
        if s.index != i + 1 {
            r.add(
                format!("sentence {}", s.index),
                format!("expected sentence number {}", i + 1),
            );
        }
        for t in &s.tokens {
            check_id(&mut r, &t.id);
            if t.end < t.start {
                r.add(&t.id, "token offsets are reversed");
            }
            if let Some(prev) = last_end {
                if t.start < prev {
                    r.add(&t.id, "token offsets overlap or decrease");
                }
            }
            last_end = Some(t.end);
        }
    }

    let span_in = |r: &mut Report, owner: &str, sentence: usize, span: &TokenSpan| {
        let ends = [&span.first, &span.last];
        for end in ends {
            match index.token(end) {
                None => r.add(owner, format!("span token `{end}` does not exist")),
                Some((s, _)) if s != sentence => {
                    r.add(owner, format!("span token `{end}` is outside sentence {sentence}"))
                }
                _ => {}
            }
        }
        if index.token(&span.first).is_some() && index.token(&span.last).is_some() && index.span_range(span).is_none() {
            r.add(owner, "span ends are out of order");
        }
    };

    let resolves = |id: &str, kinds: &[IdKind]| index.kind(id).is_some_and(|k| kinds.contains(&k));

    for p in &doc.predicates {
        check_id(&mut r, &p.id);
        span_in(&mut r, &p.id, p.sentence, &p.span);
        if p.pos == PosClass::Nominal && p.tense != Tense::None {
            r.add(&p.id, format!("nominal predicate carries tense {}", p.tense));
        }
        for (label, target) in &p.roles {
            if !resolves(target, &[IdKind::Mention, IdKind::Timex]) {
                r.add(&p.id, format!("role {label} points at unknown id `{target}`"));
            }
        }
    }
    for m in &doc.entity_mentions {
        check_id(&mut r, &m.id);
        span_in(&mut r, &m.id, m.sentence, &m.span);
        let inside = match (index.token(&m.head), index.span_range(&m.span)) {
            (Some((_, h)), Some((a, b))) => a <= h && h <= b,
            _ => false,
        };
        if !inside {
            r.add(&m.id, format!("head token `{}` is not inside the mention span", m.head));
        }
    }
    for t in &doc.timexes {
        check_id(&mut r, &t.id);
        span_in(&mut r, &t.id, t.sentence, &t.span);
    }
    for (i, chain) in doc.coref_chains.iter().enumerate() {
        for id in chain {
            if !resolves(id, &[IdKind::Mention, IdKind::Predicate]) {
                r.add(format!("coref chain {}", i + 1), format!("unknown member `{id}`"));
            }
        }
    }
    for (i, l) in doc.tlinks.iter().enumerate() {
        let name = format!("tlink {}", i + 1);
        if l.source == l.target {
            r.add(&name, "source equals target");
        }
        for end in [&l.source, &l.target] {
            if !resolves(end, &[IdKind::Predicate, IdKind::Timex]) {
                r.add(&name, format!("unknown endpoint `{end}`"));
            }
        }
    }
    r.0
}
