//! Layered document annotations consumed by the extraction systems.
//!
//! A document carries the output of an upstream pipeline: tokens, semantic
//! role frames, entity mentions with knowledge-base links, normalized time
//! expressions, coreference chains and temporal links. See [`parse_document`]
//! for the line format.

mod parse;
mod validate;
mod write;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::anchor::TimeAnchor;

pub use parse::parse_document;
pub use validate::{validate_document, Violation};
pub use write::serialize_document;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedDocument {
    pub doc_id: String,
    pub language: String,
    pub dct: TimeAnchor,
    pub sentences: Vec<Sentence>,
    pub predicates: Vec<PredicateAnnotation>,
    pub entity_mentions: Vec<EntityMentionAnnotation>,
    pub timexes: Vec<TimexAnnotation>,
    /// Chains of coreferent ids. Entity chains hold mention ids; chains made
    /// of predicate ids express within-document event coreference.
    pub coref_chains: Vec<Vec<String>>,
    pub tlinks: Vec<TemporalLink>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub index: usize,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub id: String,
    pub surface: String,
    pub start: usize,
    pub end: usize,
}

/// Inclusive range of tokens, named by their ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenSpan {
    pub first: String,
    pub last: String,
}

impl TokenSpan {
    pub fn single(id: impl Into<String>) -> Self {
        let id = id.into();
        Self {
            first: id.clone(),
            last: id,
        }
    }
}

impl fmt::Display for TokenSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            f.write_str(&self.first)
        } else {
            write!(f, "{}..{}", self.first, self.last)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosClass {
    Verbal,
    Nominal,
}

/// Tense inventory keyed by the implicit anchoring pass. Finer tenses are
/// mapped onto these by the annotation producer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tense {
    Past,
    Present,
    Future,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateAnnotation {
    pub id: String,
    pub sentence: usize,
    pub span: TokenSpan,
    /// Sense label, e.g. `sell.01` (PropBank) or `vender.1` (AnCora).
    pub sense: String,
    pub pos: PosClass,
    pub tense: Tense,
    pub negated: bool,
    /// Surface form of an accompanying modal verb.
    pub modal: Option<String>,
    /// Role label to the id of the filling entity mention or timex.
    pub roles: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityMentionAnnotation {
    pub id: String,
    pub sentence: usize,
    pub span: TokenSpan,
    pub head: String,
    pub ned_link: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TimexType {
    Date,
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimexAnnotation {
    pub id: String,
    pub sentence: usize,
    pub span: TokenSpan,
    pub timex_type: TimexType,
    pub value: TimeAnchor,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TlinkRelation {
    Simultaneous,
    Before,
    After,
    Other(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalLink {
    pub source: String,
    pub target: String,
    pub relation: TlinkRelation,
}

macro_rules! keyword_enum {
    ($ty:ident { $($variant:ident => $kw:literal),+ $(,)? }) => {
        impl $ty {
            pub fn as_str(&self) -> &'static str {
                match self { $($ty::$variant => $kw),+ }
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($kw => Ok($ty::$variant),)+
                    _ => Err(format!("expected one of {}", [$($kw),+].join("|"))),
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

keyword_enum!(PosClass { Verbal => "VERBAL", Nominal => "NOMINAL" });
keyword_enum!(Tense { Past => "PAST", Present => "PRESENT", Future => "FUTURE", None => "NONE" });

impl TimexType {
    pub fn as_str(&self) -> &str {
        match self {
            TimexType::Date => "DATE",
            TimexType::Other(s) => s,
        }
    }
}

impl From<&str> for TimexType {
    fn from(s: &str) -> Self {
        if s == "DATE" {
            TimexType::Date
        } else {
            TimexType::Other(s.to_string())
        }
    }
}

impl TlinkRelation {
    pub fn as_str(&self) -> &str {
        match self {
            TlinkRelation::Simultaneous => "SIMULTANEOUS",
            TlinkRelation::Before => "BEFORE",
            TlinkRelation::After => "AFTER",
            TlinkRelation::Other(s) => s,
        }
    }
}

impl From<&str> for TlinkRelation {
    fn from(s: &str) -> Self {
        match s {
            "SIMULTANEOUS" => TlinkRelation::Simultaneous,
            "BEFORE" => TlinkRelation::Before,
            "AFTER" => TlinkRelation::After,
            other => TlinkRelation::Other(other.to_string()),
        }
    }
}

/// What an id names inside a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdKind {
    Token,
    Predicate,
    Mention,
    Timex,
}

/// Lookup tables over a document's ids and token positions.
#[derive(Debug, Default)]
pub struct DocIndex<'a> {
    ids: HashMap<&'a str, (IdKind, usize)>,
    /// token id -> (sentence index, position in document token order)
    tokens: HashMap<&'a str, (usize, usize)>,
    surfaces: Vec<&'a str>,
}

impl<'a> DocIndex<'a> {
    pub fn new(doc: &'a AnnotatedDocument) -> Self {
        let mut index = DocIndex::default();
        let mut pos = 0;
        for sentence in &doc.sentences {
            for token in &sentence.tokens {
                index.tokens.entry(&token.id).or_insert((sentence.index, pos));
                index.ids.entry(&token.id).or_insert((IdKind::Token, pos));
                index.surfaces.push(&token.surface);
                pos += 1;
            }
        }
        for (i, p) in doc.predicates.iter().enumerate() {
            index.ids.entry(&p.id).or_insert((IdKind::Predicate, i));
        }
        for (i, m) in doc.entity_mentions.iter().enumerate() {
            index.ids.entry(&m.id).or_insert((IdKind::Mention, i));
        }
        for (i, t) in doc.timexes.iter().enumerate() {
            index.ids.entry(&t.id).or_insert((IdKind::Timex, i));
        }
        index
    }

    pub fn kind(&self, id: &str) -> Option<IdKind> {
        self.ids.get(id).map(|(k, _)| *k)
    }

    /// Position of the element among its kind (predicates, mentions, ...).
    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.get(id).map(|(_, i)| *i)
    }

    pub fn token(&self, id: &str) -> Option<(usize, usize)> {
        self.tokens.get(id).copied()
    }

    /// Document-order token positions covered by `span`, if both ends exist
    /// and are ordered.
    pub fn span_range(&self, span: &TokenSpan) -> Option<(usize, usize)> {
        let (_, a) = self.token(&span.first)?;
        let (_, b) = self.token(&span.last)?;
        (a <= b).then_some((a, b))
    }

    pub fn token_surface(&self, id: &str) -> Option<&'a str> {
        self.token(id).map(|(_, pos)| self.surfaces[pos])
    }

    pub fn span_text(&self, span: &TokenSpan) -> Option<String> {
        let (a, b) = self.span_range(span)?;
        Some(self.surfaces[a..=b].join(" "))
    }
}

impl AnnotatedDocument {
    /// A header-only document.
    pub fn empty(doc_id: impl Into<String>, language: impl Into<String>, dct: TimeAnchor) -> Self {
        Self {
            doc_id: doc_id.into(),
            language: language.into(),
            dct,
            sentences: Vec::new(),
            predicates: Vec::new(),
            entity_mentions: Vec::new(),
            timexes: Vec::new(),
            coref_chains: Vec::new(),
            tlinks: Vec::new(),
        }
    }

    pub fn index(&self) -> DocIndex<'_> {
        DocIndex::new(self)
    }

    pub fn predicate(&self, id: &str) -> Option<&PredicateAnnotation> {
        self.predicates.iter().find(|p| p.id == id)
    }

    pub fn mention(&self, id: &str) -> Option<&EntityMentionAnnotation> {
        self.entity_mentions.iter().find(|m| m.id == id)
    }

    pub fn timex(&self, id: &str) -> Option<&TimexAnnotation> {
        self.timexes.iter().find(|t| t.id == id)
    }

    /// Numeric part of the document id (`en-18319` -> `18319`). Parallel
    /// translations share it.
    pub fn numeric_id(&self) -> Option<&str> {
        numeric_part(&self.doc_id)
    }
}

/// Splits `<lang>-<digits>` into its parts.
pub fn split_doc_id(doc_id: &str) -> Option<(&str, &str)> {
    let (lang, digits) = doc_id.split_once('-')?;
    let lang_ok = (2..=3).contains(&lang.len()) && lang.bytes().all(|b| b.is_ascii_lowercase());
    let digits_ok = !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit());
    (lang_ok && digits_ok).then_some((lang, digits))
}

pub fn numeric_part(doc_id: &str) -> Option<&str> {
    split_doc_id(doc_id).map(|(_, n)| n)
}
