//! Extraction systems behind a common interface, selectable by name.

use std::collections::{BTreeMap, HashMap};

use crate::corpus::AnnotatedDocument;
use crate::crosslingual::{event_context, merge_timelines, LanguageTimeline};
use crate::error::ExtractionError;
use crate::extraction::{build_timeline, extract_events, AnchoredEvent, AnchoringMode, EventCoref, TargetEntity};
use crate::resources::ResourceTables;
use crate::timeline::Timeline;

/// A timeline extraction strategy.
pub trait TimelineSystem: Send + Sync {
    /// Registry key, lowercase.
    fn name(&self) -> &str;

    fn description(&self) -> &str;

    /// Fails when `tables` lacks something the system needs.
    fn check_resources(&self, _tables: &ResourceTables) -> Result<(), ExtractionError> {
        Ok(())
    }

    /// Extracts the timeline of `target` from `docs`, which may mix
    /// languages. Multilingual input yields one merged timeline.
    fn extract(
        &self,
        docs: &[&AnnotatedDocument],
        target: &TargetEntity,
        tables: &ResourceTables,
    ) -> Result<Timeline, ExtractionError>;
}

/// Anchored events of one language, with the documents they came from.
struct LanguageRun<'a> {
    docs: Vec<&'a AnnotatedDocument>,
    events: Vec<(usize, AnchoredEvent)>,
}

fn run_by_language<'a>(
    docs: &[&'a AnnotatedDocument],
    target: &TargetEntity,
    tables: &ResourceTables,
    mode: AnchoringMode,
) -> BTreeMap<String, LanguageRun<'a>> {
    let mut runs: BTreeMap<String, LanguageRun<'a>> = BTreeMap::new();
    for doc in docs {
        let run = runs.entry(doc.language.clone()).or_insert_with(|| LanguageRun {
            docs: Vec::new(),
            events: Vec::new(),
        });
        let d = run.docs.len();
        run.docs.push(doc);
        run.events.extend(
            extract_events(doc, target, tables, mode)
                .into_iter()
                .filter(|e| e.anchor.is_some())
                .map(|e| (d, e)),
        );
    }
    runs
}

fn language_timeline(
    run: &LanguageRun<'_>,
    target: &TargetEntity,
    tables: &ResourceTables,
    with_contexts: bool,
) -> Result<LanguageTimeline, ExtractionError> {
    let events: Vec<AnchoredEvent> = run.events.iter().map(|(_, e)| e.clone()).collect();
    let coref = EventCoref::from_documents(run.docs.iter().copied());
    let timeline = build_timeline(&target.name, &events, &coref)?;
    let mut contexts = HashMap::new();
    if with_contexts {
        for (d, e) in &run.events {
            if let Some(ctx) = event_context(run.docs[*d], e, tables) {
                contexts.entry(e.mention()).or_insert(ctx);
            }
        }
    }
    Ok(LanguageTimeline { timeline, contexts })
}

fn extract_with(
    docs: &[&AnnotatedDocument],
    target: &TargetEntity,
    tables: &ResourceTables,
    mode: AnchoringMode,
    crosslingual: bool,
) -> Result<Timeline, ExtractionError> {
    let runs = run_by_language(docs, target, tables, mode);
    let mut inputs = runs
        .values()
        .map(|run| language_timeline(run, target, tables, crosslingual))
        .collect::<Result<Vec<_>, _>>()?;
    match inputs.len() {
        0 => Ok(Timeline::empty(&target.name)),
        1 => Ok(inputs.pop().expect("one input").timeline),
        _ => Ok(merge_timelines(&target.name, &inputs, tables)),
    }
}

/// Explicit anchors only.
#[derive(Debug, Default)]
pub struct Bte;

impl TimelineSystem for Bte {
    fn name(&self) -> &str {
        "bte"
    }

    fn description(&self) -> &str {
        "baseline: explicit anchors from temporal links and temporal roles"
    }

    fn extract(
        &self,
        docs: &[&AnnotatedDocument],
        target: &TargetEntity,
        tables: &ResourceTables,
    ) -> Result<Timeline, ExtractionError> {
        extract_with(docs, target, tables, AnchoringMode::Explicit, false)
    }
}

/// Explicit anchors plus document-level propagation by tense.
#[derive(Debug, Default)]
pub struct Dlt;

impl TimelineSystem for Dlt {
    fn name(&self) -> &str {
        "dlt"
    }

    fn description(&self) -> &str {
        "document-level time-anchoring"
    }

    fn extract(
        &self,
        docs: &[&AnnotatedDocument],
        target: &TargetEntity,
        tables: &ResourceTables,
    ) -> Result<Timeline, ExtractionError> {
        extract_with(docs, target, tables, AnchoringMode::Implicit, false)
    }
}

/// DLT with cross-lingual event coreference.
#[derive(Debug, Default)]
pub struct Cle;

impl TimelineSystem for Cle {
    fn name(&self) -> &str {
        "cle"
    }

    fn description(&self) -> &str {
        "document-level time-anchoring with cross-lingual event coreference"
    }

    fn check_resources(&self, tables: &ResourceTables) -> Result<(), ExtractionError> {
        let missing: Vec<&str> = [
            (!tables.loaded.predmatrix).then_some("predmatrix"),
            (!tables.loaded.interlang).then_some("interlang"),
        ]
        .into_iter()
        .flatten()
        .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(ExtractionError::MissingResources(
                self.name().to_string(),
                missing.join(", "),
            ))
        }
    }

    fn extract(
        &self,
        docs: &[&AnnotatedDocument],
        target: &TargetEntity,
        tables: &ResourceTables,
    ) -> Result<Timeline, ExtractionError> {
        self.check_resources(tables)?;
        extract_with(docs, target, tables, AnchoringMode::Implicit, true)
    }
}

/// Named systems.
pub struct SystemRegistry {
    systems: BTreeMap<String, Box<dyn TimelineSystem>>,
}

impl Default for SystemRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl SystemRegistry {
    pub fn empty() -> Self {
        Self {
            systems: BTreeMap::new(),
        }
    }

    /// `bte`, `dlt` and `cle`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Bte));
        r.register(Box::new(Dlt));
        r.register(Box::new(Cle));
        r
    }

    /// Adds or replaces a system under its own name.
    pub fn register(&mut self, system: Box<dyn TimelineSystem>) {
        self.systems.insert(system.name().to_ascii_lowercase(), system);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TimelineSystem, ExtractionError> {
        self.systems
            .get(&name.to_ascii_lowercase())
            .map(|s| s.as_ref())
            .ok_or_else(|| ExtractionError::UnknownSystem(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.systems.keys().map(String::as_str)
    }
}
