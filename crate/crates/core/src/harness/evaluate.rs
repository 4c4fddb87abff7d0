use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;

use super::manifest::{read_timeline, Corpus};
use crate::corpus::AnnotatedDocument;
use crate::error::HarnessError;
use crate::resources::ResourceTables;
use crate::scorer::{micro_average, score_pair, AveragingMode, MetricMode, PairScore, ScoreReport, ScoreRow};
use crate::system::TimelineSystem;
use crate::timeline::{entity_slug, Timeline, TIMELINE_EXTENSION};

/// One timeline per manifest target, in manifest order, from the documents
/// of `language` (all documents when `None`).
pub fn run_extraction(
    corpus: &Corpus,
    system: &dyn TimelineSystem,
    tables: &ResourceTables,
    language: Option<&str>,
) -> Result<Vec<Timeline>, HarnessError> {
    let docs = corpus.docs_in(language);
    extract_all(&docs, corpus, system, tables)
}

pub(crate) fn extract_all(
    docs: &[&AnnotatedDocument],
    corpus: &Corpus,
    system: &dyn TimelineSystem,
    tables: &ResourceTables,
) -> Result<Vec<Timeline>, HarnessError> {
    corpus
        .manifest
        .targets
        .par_iter()
        .map(|t| system.extract(docs, t, tables).map_err(HarnessError::from))
        .collect()
}

/// Scores system timelines against gold timelines paired by position; rows
/// are named after the gold target.
pub fn evaluate(
    system: &[Timeline],
    gold: &[Timeline],
    modes: &[MetricMode],
    averaging: AveragingMode,
) -> Result<ScoreReport, HarnessError> {
    if system.len() != gold.len() {
        return Err(HarnessError::Config(format!(
            "{} system timelines for {} gold timelines",
            system.len(),
            gold.len()
        )));
    }
    let named: Vec<(String, &Timeline, &Timeline)> = system
        .iter()
        .zip(gold)
        .map(|(s, g)| (entity_slug(&g.target), s, g))
        .collect();
    score_named(&named, modes, averaging)
}

fn score_named(
    pairs: &[(String, &Timeline, &Timeline)],
    modes: &[MetricMode],
    averaging: AveragingMode,
) -> Result<ScoreReport, HarnessError> {
    let mut rows = Vec::with_capacity(pairs.len() * modes.len());
    for &mode in modes {
        let scored = pairs
            .par_iter()
            .map(|(name, s, g)| {
                Ok(ScoreRow {
                    timeline: name.clone(),
                    mode,
                    score: score_pair(s, g, mode)?,
                })
            })
            .collect::<Result<Vec<_>, HarnessError>>()?;
        rows.extend(scored);
    }
    Ok(ScoreReport::new(rows, averaging))
}

/// Micro-averaged scores, one per mode.
pub(crate) fn corpus_scores(
    system: &[Timeline],
    gold: &[Timeline],
    modes: &[MetricMode],
) -> Result<Vec<PairScore>, HarnessError> {
    modes
        .iter()
        .map(|&mode| {
            let scores = system
                .iter()
                .zip(gold)
                .map(|(s, g)| score_pair(s, g, mode))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(micro_average(&scores, AveragingMode::Counts))
        })
        .collect()
}

/// Result of scoring two timeline directories.
#[derive(Debug, Clone)]
pub struct DirectoryScore {
    pub report: ScoreReport,
    /// Gold timelines without a system counterpart (scored as empty).
    pub missing: Vec<String>,
}

/// Scores every `*.timeline` of `gold_dir` against the file of the same
/// name in `system_dir`, in file-name order.
pub fn score_directories(
    system_dir: &Path,
    gold_dir: &Path,
    modes: &[MetricMode],
    averaging: AveragingMode,
) -> Result<DirectoryScore, HarnessError> {
    let io = |path: &Path, source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    };
    if !system_dir.is_dir() {
        return Err(io(
            system_dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        ));
    }
    let mut names: Vec<String> = std::fs::read_dir(gold_dir)
        .map_err(|e| io(gold_dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == TIMELINE_EXTENSION))
        .filter_map(|p| p.file_stem().and_then(|s| s.to_str()).map(str::to_string))
        .collect();
    names.sort();

    let mut missing = Vec::new();
    let mut loaded = Vec::with_capacity(names.len());
    for name in names {
        let file = format!("{name}.{TIMELINE_EXTENSION}");
        let gold = read_timeline(&gold_dir.join(&file))?;
        let sys_path = system_dir.join(&file);
        let sys = if sys_path.is_file() {
            read_timeline(&sys_path)?
        } else {
            missing.push(name.clone());
            Timeline::empty(&gold.target)
        };
        loaded.push((name, sys, gold));
    }
    let pairs: Vec<(String, &Timeline, &Timeline)> = loaded.iter().map(|(n, s, g)| (n.clone(), s, g)).collect();
    Ok(DirectoryScore {
        report: score_named(&pairs, modes, averaging)?,
        missing,
    })
}

/// Gold timelines restricted to the documents of a subset.
pub(crate) fn restrict_gold(gold: &[Timeline], docs: &HashSet<&str>) -> Vec<Timeline> {
    gold.iter()
        .map(|g| {
            let r = g.restrict_to_docs(docs);
            assert!(
                r.mentions().all(|m| docs.contains(m.doc_id.as_str())),
                "restricted gold references an excluded document"
            );
            r
        })
        .collect()
}
