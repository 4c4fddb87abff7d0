use std::path::PathBuf;

use thiserror::Error;

use crate::scorer::NodeId;

/// Errors raised while reading annotation files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: field `{field}`: {message}")]
    Field {
        line: usize,
        field: &'static str,
        message: String,
    },
    #[error("line {line}: malformed time anchor `{value}`")]
    Anchor { line: usize, value: String },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: reference to unknown id `{id}`")]
    DanglingId { line: usize, id: String },
    #[error("line {line}: document id `{doc_id}` does not carry language prefix `{language}`")]
    LanguagePrefix {
        line: usize,
        doc_id: String,
        language: String,
    },
    #[error("line {line}: unknown section marker `{marker}`")]
    UnknownSection { line: usize, marker: String },
    #[error("line {line}: {message}")]
    Structure { line: usize, message: String },
}

/// Errors raised while reading timeline files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TimelineError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}:{line}: expected {expected} columns, found {found}")]
    Arity {
        path: PathBuf,
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("{path}:{line}: conflicting entry for `{key}`")]
    Conflict { path: PathBuf, line: u64, key: String },
    #[error("redirect cycle through {}", .0.join(" -> "))]
    RedirectCycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("inconsistent temporal graph: {}", describe_cycle(.cycle))]
    Inconsistent { cycle: Vec<NodeId> },
}

fn describe_cycle(cycle: &[NodeId]) -> String {
    cycle.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("event {doc_id}/{pred_id} has no time anchor")]
    Unanchored { doc_id: String, pred_id: String },
    #[error("system `{0}` requires resource tables that were not loaded: {1}")]
    MissingResources(String, String),
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        #[source]
        source: DocumentError,
    },
    #[error("{path}: {source}")]
    Timeline {
        path: PathBuf,
        #[source]
        source: TimelineError,
    },
    #[error("{path}:{line}: {message}")]
    Manifest {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("split: {0}")]
    Split(String),
    #[error("invalid experiment configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}
