use std::fmt::Write as _;

use super::AnnotatedDocument;

/// Canonical text form accepted by [`super::parse_document`]. Empty sections
/// are omitted.
pub fn serialize_document(doc: &AnnotatedDocument) -> String {
    let mut out = String::new();
    // `write!` into a String cannot fail.
    let _ = writeln!(out, "#DOC {} {} {}", doc.doc_id, doc.language, doc.dct);

    if !doc.sentences.is_empty() {
        out.push_str("#SENT\n");
        for s in &doc.sentences {
            for t in &s.tokens {
                let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", s.index, t.id, t.surface, t.start, t.end);
            }
        }
    }
    if !doc.predicates.is_empty() {
        out.push_str("#PRED\n");
        for p in &doc.predicates {
            let roles = if p.roles.is_empty() {
                "-".to_string()
            } else {
                p.roles
                    .iter()
                    .map(|(l, t)| format!("{l}={t}"))
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                p.id,
                p.sentence,
                p.span,
                p.sense,
                p.pos,
                p.tense,
                p.negated,
                p.modal.as_deref().unwrap_or("-"),
                roles
            );
        }
    }
    if !doc.entity_mentions.is_empty() {
        out.push_str("#ENT\n");
        for m in &doc.entity_mentions {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                m.id,
                m.sentence,
                m.span,
                m.head,
                m.ned_link.as_deref().unwrap_or("-")
            );
        }
    }
    if !doc.timexes.is_empty() {
        out.push_str("#TIMEX\n");
        for t in &doc.timexes {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                t.id,
                t.sentence,
                t.span,
                t.timex_type.as_str(),
                t.value
            );
        }
    }
    if !doc.coref_chains.is_empty() {
        out.push_str("#COREF\n");
        for chain in &doc.coref_chains {
            out.push_str(&chain.join("\t"));
            out.push('\n');
        }
    }
    if !doc.tlinks.is_empty() {
        out.push_str("#TLINK\n");
        for l in &doc.tlinks {
            let _ = writeln!(out, "{}\t{}\t{}", l.source, l.target, l.relation.as_str());
        }
    }
    out
}
