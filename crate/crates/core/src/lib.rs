//! Per-entity event timelines from pre-annotated multilingual documents,
//! and their evaluation through temporal graphs.
//!
//! The main pieces:
//!
//! * [`corpus`] — the annotation file format and its validation;
//! * [`resources`] — redirect, interlanguage-link and role-alignment tables;
//! * [`extraction`] and [`crosslingual`] — event selection, time anchoring
//!   and cross-lingual merging, packaged as named [`system`]s;
//! * [`timeline`] — the tabulated timeline format;
//! * [`scorer`] — graph construction, closure, reduction and P/R/F1;
//! * [`harness`] — corpus manifests, splits, sweeps and diagnostics.

pub mod anchor;
pub mod corpus;
pub mod crosslingual;
pub mod error;
pub mod extraction;
pub mod harness;
pub mod resources;
pub mod scorer;
pub mod system;
pub mod timeline;

pub use anchor::TimeAnchor;
pub use corpus::{parse_document, serialize_document, validate_document, AnnotatedDocument};
pub use error::{DocumentError, ExtractionError, ResourceError, ScoreError, TimelineError};
pub use extraction::TargetEntity;
pub use resources::ResourceTables;
pub use scorer::{score_pair, MetricMode, PairScore};
pub use system::{SystemRegistry, TimelineSystem};
pub use timeline::{parse_timeline, serialize_timeline, Timeline};
