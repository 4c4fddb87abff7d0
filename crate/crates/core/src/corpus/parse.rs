use std::collections::{BTreeMap, HashSet};

use super::*;
use crate::error::DocumentError;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Sent,
    Pred,
    Ent,
    Timex,
    Coref,
    Tlink,
}

impl Section {
    fn from_marker(marker: &str) -> Option<Self> {
        Some(match marker {
            "#SENT" => Section::Sent,
            "#PRED" => Section::Pred,
            "#ENT" => Section::Ent,
            "#TIMEX" => Section::Timex,
            "#COREF" => Section::Coref,
            "#TLINK" => Section::Tlink,
            _ => return None,
        })
    }
}

struct PendingRef {
    line: usize,
    id: String,
    kinds: &'static [IdKind],
}

struct Parser {
    seen: HashSet<String>,
    pending: Vec<PendingRef>,
}

impl Parser {
    fn declare(&mut self, line: usize, id: &str) -> Result<(), DocumentError> {
        if id.is_empty() || id == "-" {
            return Err(field(line, "id", "empty id"));
        }
        if !self.seen.insert(id.to_string()) {
            return Err(DocumentError::DuplicateId {
                line,
                id: id.to_string(),
            });
        }
        Ok(())
    }

    fn refer(&mut self, line: usize, id: &str, kinds: &'static [IdKind]) {
        self.pending.push(PendingRef {
            line,
            id: id.to_string(),
            kinds,
        });
    }

    fn span(&mut self, line: usize, raw: &str) -> Result<TokenSpan, DocumentError> {
        let span = match raw.split_once("..") {
            Some((a, b)) => TokenSpan {
                first: a.to_string(),
                last: b.to_string(),
            },
            None => TokenSpan::single(raw),
        };
        if span.first.is_empty() || span.last.is_empty() {
            return Err(field(line, "span", format!("malformed span `{raw}`")));
        }
        self.refer(line, &span.first, &[IdKind::Token]);
        self.refer(line, &span.last, &[IdKind::Token]);
        Ok(span)
    }
}

fn field(line: usize, field: &'static str, message: impl Into<String>) -> DocumentError {
    DocumentError::Field {
        line,
        field,
        message: message.into(),
    }
}

fn columns<'a>(line: usize, raw: &'a str, names: &[&'static str]) -> Result<Vec<&'a str>, DocumentError> {
    let cols: Vec<&str> = raw.split('\t').collect();
    if cols.len() != names.len() {
        return Err(DocumentError::Structure {
            line,
            message: format!(
                "expected {} tab-separated fields ({}), found {}",
                names.len(),
                names.join(", "),
                cols.len()
            ),
        });
    }
    Ok(cols)
}

fn number(line: usize, name: &'static str, raw: &str) -> Result<usize, DocumentError> {
    raw.parse::<usize>()
        .map_err(|_| field(line, name, format!("expected a non-negative integer, found `{raw}`")))
}

fn sentence_number(line: usize, raw: &str) -> Result<usize, DocumentError> {
    match number(line, "sentence", raw)? {
        0 => Err(field(line, "sentence", "sentence numbers start at 1")),
        n => Ok(n),
    }
}

fn anchor(line: usize, raw: &str) -> Result<TimeAnchor, DocumentError> {
    raw.parse().map_err(|_| DocumentError::Anchor {
        line,
        value: raw.to_string(),
    })
}

fn keyword<T: FromStr<Err = String>>(line: usize, name: &'static str, raw: &str) -> Result<T, DocumentError> {
    raw.parse().map_err(|e| field(line, name, e))
}

fn optional(raw: &str) -> Option<String> {
    (raw != "-").then(|| raw.to_string())
}

/// Parses one annotation file.
///
/// ```text
/// #DOC <doc_id> <lang> <dct>
/// #SENT
/// <sentence>  <token_id>  <surface>  <start>  <end>
/// #PRED
/// <pred_id>  <sentence>  <span>  <sense>  <VERBAL|NOMINAL>  <PAST|PRESENT|FUTURE|NONE>  <true|false>  <modal|->  <roles|->
/// #ENT
/// <mention_id>  <sentence>  <span>  <head_token_id>  <uri|->
/// #TIMEX
/// <timex_id>  <sentence>  <span>  <type>  <value>
/// #COREF
/// <id>  <id>  ...
/// #TLINK
/// <source_id>  <target_id>  <relation>
/// ```
///
/// Fields are tab-separated. A span is `<token_id>` or `<first>..<last>`;
/// roles are `LABEL=id` pairs joined by `;`. Blank lines are ignored. All
/// ids share one namespace and every reference must resolve.
pub fn parse_document(raw: &[u8]) -> Result<AnnotatedDocument, DocumentError> {
    let text = std::str::from_utf8(raw).map_err(|e| DocumentError::Structure {
        line: 1,
        message: format!("input is not UTF-8: {e}"),
    })?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(DocumentError::Structure {
        line: 1,
        message: "missing #DOC header".into(),
    })?;
    let mut doc = parse_header(header_line, header)?;

    let mut parser = Parser {
        seen: HashSet::new(),
        pending: Vec::new(),
    };
    let mut section: Option<Section> = None;

    for (line, raw) in lines {
        if raw.starts_with('#') {
            section = Some(
                Section::from_marker(raw.trim_end()).ok_or_else(|| DocumentError::UnknownSection {
                    line,
                    marker: raw.to_string(),
                })?,
            );
            continue;
        }
        let Some(current) = section else {
            return Err(DocumentError::Structure {
                line,
                message: "record outside of any section".into(),
            });
        };
        match current {
            Section::Sent => {
                let c = columns(line, raw, &["sentence", "token_id", "surface", "start", "end"])?;
                let index = sentence_number(line, c[0])?;
                parser.declare(line, c[1])?;
                let token = Token {
                    id: c[1].to_string(),
                    surface: c[2].to_string(),
                    start: number(line, "start", c[3])?,
                    end: number(line, "end", c[4])?,
                };
                match doc.sentences.last_mut() {
                    Some(s) if s.index == index => s.tokens.push(token),
                    _ => doc.sentences.push(Sentence {
                        index,
                        tokens: vec![token],
                    }),
                }
            }
            Section::Pred => {
                let c = columns(
                    line,
                    raw,
                    &[
                        "pred_id", "sentence", "span", "sense", "pos", "tense", "negated", "modal", "roles",
                    ],
                )?;
                parser.declare(line, c[0])?;
                let negated = match c[6] {
                    "true" => true,
                    "false" => false,
                    other => return Err(field(line, "negated", format!("expected true|false, found `{other}`"))),
                };
                let mut roles = BTreeMap::new();
                if c[8] != "-" {
                    for pair in c[8].split(';') {
                        let (label, target) = pair
                            .split_once('=')
                            .filter(|(l, t)| !l.is_empty() && !t.is_empty())
                            .ok_or_else(|| field(line, "roles", format!("malformed role `{pair}`")))?;
                        if roles.insert(label.to_string(), target.to_string()).is_some() {
                            return Err(field(line, "roles", format!("role `{label}` given twice")));
                        }
                        parser.refer(line, target, &[IdKind::Mention, IdKind::Timex]);
                    }
                }
                doc.predicates.push(PredicateAnnotation {
                    id: c[0].to_string(),
                    sentence: sentence_number(line, c[1])?,
                    span: parser.span(line, c[2])?,
                    sense: c[3].to_string(),
                    pos: keyword(line, "pos", c[4])?,
                    tense: keyword(line, "tense", c[5])?,
                    negated,
                    modal: optional(c[7]),
                    roles,
                });
            }
            Section::Ent => {
                let c = columns(line, raw, &["mention_id", "sentence", "span", "head", "ned_link"])?;
                parser.declare(line, c[0])?;
                parser.refer(line, c[3], &[IdKind::Token]);
                doc.entity_mentions.push(EntityMentionAnnotation {
                    id: c[0].to_string(),
                    sentence: sentence_number(line, c[1])?,
                    span: parser.span(line, c[2])?,
                    head: c[3].to_string(),
                    ned_link: optional(c[4]),
                });
            }
            Section::Timex => {
                let c = columns(line, raw, &["timex_id", "sentence", "span", "type", "value"])?;
                parser.declare(line, c[0])?;
                doc.timexes.push(TimexAnnotation {
                    id: c[0].to_string(),
                    sentence: sentence_number(line, c[1])?,
                    span: parser.span(line, c[2])?,
                    timex_type: TimexType::from(c[3]),
                    value: anchor(line, c[4])?,
                });
            }
            Section::Coref => {
                let chain: Vec<String> = raw.split('\t').map(str::to_string).collect();
                for id in &chain {
                    parser.refer(line, id, &[IdKind::Mention, IdKind::Predicate]);
                }
                doc.coref_chains.push(chain);
            }
            Section::Tlink => {
                let c = columns(line, raw, &["source", "target", "relation"])?;
                parser.refer(line, c[0], &[IdKind::Predicate, IdKind::Timex]);
                parser.refer(line, c[1], &[IdKind::Predicate, IdKind::Timex]);
                doc.tlinks.push(TemporalLink {
                    source: c[0].to_string(),
                    target: c[1].to_string(),
                    relation: TlinkRelation::from(c[2]),
                });
            }
        }
    }

    let index = doc.index();
    for r in &parser.pending {
        match index.kind(&r.id) {
            Some(kind) if r.kinds.contains(&kind) => {}
            _ => {
                return Err(DocumentError::DanglingId {
                    line: r.line,
                    id: r.id.clone(),
                })
            }
        }
    }
    drop(index);
    Ok(doc)
}

fn parse_header(line: usize, raw: &str) -> Result<AnnotatedDocument, DocumentError> {
    let parts: Vec<&str> = raw.split_whitespace().collect();
    if parts.first() != Some(&"#DOC") {
        return Err(DocumentError::Structure {
            line,
            message: "first line must be a #DOC header".into(),
        });
    }
    let [_, doc_id, language, dct] = parts[..] else {
        return Err(DocumentError::Structure {
            line,
            message: "header is `#DOC <doc_id> <lang> <dct>`".into(),
        });
    };
    if language.len() != 2 || !language.bytes().all(|b| b.is_ascii_lowercase()) {
        return Err(field(line, "lang", format!("`{language}` is not an ISO 639-1 code")));
    }
    match split_doc_id(doc_id) {
        Some((prefix, _)) if prefix == language => {}
        _ => {
            return Err(DocumentError::LanguagePrefix {
                line,
                doc_id: doc_id.to_string(),
                language: language.to_string(),
            })
        }
    }
    Ok(AnnotatedDocument::empty(doc_id, language, anchor(line, dct)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "#DOC en-1 en 2007-07-09\n";

    fn doc(body: &str) -> Result<AnnotatedDocument, DocumentError> {
        parse_document(format!("{HEADER}{body}").as_bytes())
    }

    #[test]
    fn header_only_document_is_valid() {
        let d = doc("").unwrap();
        assert_eq!(d.doc_id, "en-1");
        assert!(d.predicates.is_empty());
        assert!(validate_document(&d).is_empty());
    }

    #[test]
    fn role_pointing_at_unknown_mention_is_named() {
        let err =
            doc("#SENT\n1\tt1\tsold\t0\t4\n#PRED\np1\t1\tt1\tsell.01\tVERBAL\tPAST\tfalse\t-\tA0=m9\n").unwrap_err();
        assert_eq!(
            err,
            DocumentError::DanglingId {
                line: 5,
                id: "m9".into()
            }
        );
        assert!(err.to_string().contains("m9"));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = doc("#SENT\n1\tt1\ta\t0\t1\n1\tt1\tb\t2\t3\n").unwrap_err();
        assert!(matches!(err, DocumentError::DuplicateId { line: 4, .. }));
    }

    #[test]
    fn bad_language_prefix() {
        let err = parse_document(b"#DOC es-1 en 2007-07-09\n").unwrap_err();
        assert!(matches!(err, DocumentError::LanguagePrefix { .. }));
    }

    #[test]
    fn malformed_anchor_is_reported() {
        let err = doc("#SENT\n1\tt1\tMonday\t0\t6\n#TIMEX\nx1\t1\tt1\tDATE\t2005-6-6\n").unwrap_err();
        assert_eq!(
            err,
            DocumentError::Anchor {
                line: 5,
                value: "2005-6-6".into()
            }
        );
        assert!(parse_document(b"#DOC en-1 en yesterday\n").is_err());
    }

    #[test]
    fn unknown_section_marker_is_rejected() {
        let err = doc("#EVENTS\n").unwrap_err();
        assert!(matches!(err, DocumentError::UnknownSection { line: 2, .. }));
    }

    #[test]
    fn wrong_kind_reference_is_dangling() {
        // a TLINK may not point at a token
        let err = doc("#SENT\n1\tt1\ta\t0\t1\n#TLINK\nt1\tt1\tBEFORE\n").unwrap_err();
        assert!(matches!(err, DocumentError::DanglingId { .. }));
    }

    #[test]
    fn arity_errors_name_the_line() {
        let err = doc("#SENT\n1\tt1\ta\t0\n").unwrap_err();
        assert!(matches!(err, DocumentError::Structure { line: 3, .. }));
    }
}
