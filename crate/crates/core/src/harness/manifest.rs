use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

use crate::corpus::{parse_document, AnnotatedDocument};
use crate::error::HarnessError;
use crate::extraction::TargetEntity;
use crate::timeline::{entity_slug, parse_timeline, Timeline, TIMELINE_EXTENSION};

/// Which gold timelines a directory holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GoldTask {
    /// Monolingual timelines of one language.
    Language(String),
    Crosslingual,
}

impl GoldTask {
    pub fn language(&self) -> Option<&str> {
        match self {
            GoldTask::Language(l) => Some(l),
            GoldTask::Crosslingual => None,
        }
    }
}

impl fmt::Display for GoldTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldTask::Language(l) => f.write_str(l),
            GoldTask::Crosslingual => f.write_str("xl"),
        }
    }
}

impl FromStr for GoldTask {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "xl" | "crosslingual" => Ok(GoldTask::Crosslingual),
            l if (2..=3).contains(&l.len()) && l.chars().all(|c| c.is_ascii_lowercase()) => {
                Ok(GoldTask::Language(l.to_string()))
            }
            other => Err(format!("unknown gold task `{other}` (a language code or `xl`)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestDoc {
    pub path: PathBuf,
    pub language: String,
    pub topic: String,
}

/// Documents, targets and gold directories of a corpus.
///
/// ```text
/// doc     <path>  <lang>  <topic>
/// target  <name>  <kb uri or ->  <head>
/// gold    <lang or xl>  <directory>
/// ```
///
/// Tab-separated; `#` starts a comment line; relative paths are resolved
/// against the manifest's directory.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusManifest {
    pub documents: Vec<ManifestDoc>,
    pub targets: Vec<TargetEntity>,
    pub gold: BTreeMap<GoldTask, PathBuf>,
}

impl CorpusManifest {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base, path)
    }

    pub fn parse(text: &str, base: &Path, origin: &Path) -> Result<Self, HarnessError> {
        let err = |line: usize, message: String| HarnessError::Manifest {
            path: origin.to_path_buf(),
            line,
            message,
        };
        let mut m = CorpusManifest::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim_end_matches('\r');
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = raw.split('\t').collect();
            match (f[0], f.len()) {
                ("doc", 4) => m.documents.push(ManifestDoc {
                    path: base.join(f[1]),
                    language: f[2].to_string(),
                    topic: f[3].to_string(),
                }),
                ("target", 4) => {
                    if f[1].is_empty() {
                        return Err(err(line, "empty target name".into()));
                    }
                    let uri = (f[2] != "-").then(|| f[2].to_string());
                    m.targets.push(TargetEntity::new(f[1], uri, f[3]));
                }
                ("gold", 3) => {
                    let task = f[1].parse().map_err(|e| err(line, e))?;
                    m.gold.insert(task, base.join(f[2]));
                }
                (kind @ ("doc" | "target" | "gold"), n) => {
                    return Err(err(line, format!("`{kind}` record has {n} fields")));
                }
                (other, _) => return Err(err(line, format!("unknown record kind `{other}`"))),
            }
        }
        Ok(m)
    }
}

/// A manifest with its documents parsed.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub manifest: CorpusManifest,
    pub docs: Vec<AnnotatedDocument>,
}

impl Corpus {
    /// Parses every listed document (concurrently) and checks that ids are
    /// unique and languages agree with the manifest.
    pub fn load(manifest: CorpusManifest) -> Result<Self, HarnessError> {
        let docs = manifest
            .documents
            .par_iter()
            .map(|d| read_document(&d.path))
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = HashSet::new();
        for (d, entry) in docs.iter().zip(&manifest.documents) {
            if !seen.insert(d.doc_id.as_str()) {
                return Err(HarnessError::Config(format!("duplicate document id `{}`", d.doc_id)));
            }
            if d.language != entry.language {
                return Err(HarnessError::Config(format!(
                    "{}: manifest says `{}`, document says `{}`",
                    entry.path.display(),
                    entry.language,
                    d.language
                )));
            }
        }
        Ok(Self { manifest, docs })
    }

    pub fn from_path(path: &Path) -> Result<Self, HarnessError> {
        Self::load(CorpusManifest::load(path)?)
    }

    pub fn docs_in(&self, language: Option<&str>) -> Vec<&AnnotatedDocument> {
        self.docs
            .iter()
            .filter(|d| language.is_none_or(|l| d.language == l))
            .collect()
    }

    /// Sorted distinct document languages.
    pub fn languages(&self) -> Vec<&str> {
        let mut langs: Vec<&str> = self.docs.iter().map(|d| d.language.as_str()).collect();
        langs.sort_unstable();
        langs.dedup();
        langs
    }

    /// Gold timelines of `task`, one per target in manifest order. A target
    /// without a gold file gets an empty timeline.
    pub fn gold(&self, task: &GoldTask) -> Result<Vec<Timeline>, HarnessError> {
        let dir = self
            .manifest
            .gold
            .get(task)
            .ok_or_else(|| HarnessError::Config(format!("no gold directory for task `{task}`")))?;
        let slugs: HashSet<String> = self.manifest.targets.iter().map(|t| entity_slug(&t.name)).collect();
        if let Ok(entries) = std::fs::read_dir(dir) {
            for entry in entries.flatten() {
                let p = entry.path();
                if p.extension().is_some_and(|e| e == TIMELINE_EXTENSION) {
                    let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
                    if !slugs.contains(stem) {
                        return Err(HarnessError::Config(format!(
                            "gold timeline {} has no matching target",
                            p.display()
                        )));
                    }
                }
            }
        }
        self.manifest
            .targets
            .iter()
            .map(|t| {
                let path = dir.join(format!("{}.{TIMELINE_EXTENSION}", entity_slug(&t.name)));
                if path.is_file() {
                    read_timeline(&path)
                } else {
                    Ok(Timeline::empty(&t.name))
                }
            })
            .collect()
    }
}

pub fn read_document(path: &Path) -> Result<AnnotatedDocument, HarnessError> {
    let bytes = std::fs::read(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_document(&bytes).map_err(|source| HarnessError::Document {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_timeline(path: &Path) -> Result<Timeline, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_timeline(&text).map_err(|source| HarnessError::Timeline {
        path: path.to_path_buf(),
        source,
    })
}
