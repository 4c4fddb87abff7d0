use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::evaluate::{corpus_scores, extract_all, restrict_gold};
use super::manifest::{Corpus, GoldTask};
use super::split::{split_5050, sweep_sets, DocSubset, ParallelPairs, SweepVariant};
use super::stats::{boxplot_stats, paired_t_test};
use crate::error::HarnessError;
use crate::resources::ResourceTables;
use crate::scorer::{MetricMode, PairScore};
use crate::system::TimelineSystem;
use crate::timeline::Timeline;

/// Corpus-level scores of each system under each mode on one document
/// subset, against the cross-lingual gold restricted to that subset.
/// Indexed `[system][mode]`.
pub fn evaluate_subset(
    corpus: &Corpus,
    subset: &DocSubset,
    systems: &[&dyn TimelineSystem],
    tables: &ResourceTables,
    gold: &[Timeline],
    modes: &[MetricMode],
) -> Result<Vec<Vec<PairScore>>, HarnessError> {
    let ids: HashSet<&str> = subset.iter().map(String::as_str).collect();
    let docs: Vec<_> = corpus.docs.iter().filter(|d| ids.contains(d.doc_id.as_str())).collect();
    if docs.len() != ids.len() {
        return Err(HarnessError::Split(
            "subset names documents missing from the corpus".into(),
        ));
    }
    let gold = restrict_gold(gold, &ids);
    systems
        .iter()
        .map(|s| {
            let timelines = extract_all(&docs, corpus, *s, tables)?;
            corpus_scores(&timelines, &gold, modes)
        })
        .collect()
}

fn fmt_f(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Scores of the 50-50 protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct FiftyFifty {
    pub systems: Vec<String>,
    pub modes: Vec<MetricMode>,
    pub splits: Vec<DocSubset>,
    /// `[split][system][mode]`
    pub scores: Vec<Vec<Vec<PairScore>>>,
}

/// Draws `n` 50-50 subsets and scores every system on each, against the
/// cross-lingual gold. Subsets are drawn sequentially and evaluated in
/// parallel; results keep split order.
pub fn run_5050(
    corpus: &Corpus,
    tables: &ResourceTables,
    systems: &[&dyn TimelineSystem],
    modes: &[MetricMode],
    n: usize,
    seed: u64,
) -> Result<FiftyFifty, HarnessError> {
    let pairs = ParallelPairs::from_corpus(corpus)?;
    let splits = split_5050(&pairs, seed, n)?;
    let gold = corpus.gold(&GoldTask::Crosslingual)?;
    let scores = splits
        .par_iter()
        .map(|s| evaluate_subset(corpus, s, systems, tables, &gold, modes))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiftyFifty {
        systems: systems.iter().map(|s| s.name().to_string()).collect(),
        modes: modes.to_vec(),
        splits,
        scores,
    })
}

impl FiftyFifty {
    /// F1 of one system and mode across splits.
    pub fn f1_series(&self, system: usize, mode: usize) -> Vec<f64> {
        self.scores.iter().map(|s| s[system][mode].f1).collect()
    }

    /// One row per split: `split,docs` then precision, recall and F1 per
    /// system and mode.
    pub fn splits_csv(&self) -> String {
        let mut out = String::from("split,docs");
        for sys in &self.systems {
            for mode in &self.modes {
                for m in ["precision", "recall", "f1"] {
                    let _ = write!(out, ",{sys}_{mode}_{m}");
                }
            }
        }
        out.push('\n');
        for (i, (split, scores)) in self.splits.iter().zip(&self.scores).enumerate() {
            let _ = write!(out, "{},{}", i + 1, split.len());
            for per_sys in scores {
                for s in per_sys {
                    let _ = write!(out, ",{},{},{}", fmt_f(s.precision), fmt_f(s.recall), fmt_f(s.f1));
                }
            }
            out.push('\n');
        }
        out
    }

    /// Paired t-tests on F1 for every pair of systems under every mode.
    /// Fewer than two splits yields `NA` statistics.
    pub fn ttest_csv(&self) -> String {
        let mut out = String::from("mode,system_a,system_b,mean_f1_a,mean_f1_b,t,p,degenerate\n");
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len().max(1) as f64;
        for (mi, mode) in self.modes.iter().enumerate() {
            for a in 0..self.systems.len() {
                for b in a + 1..self.systems.len() {
                    let (xa, xb) = (self.f1_series(a, mi), self.f1_series(b, mi));
                    let stats = match paired_t_test(&xa, &xb) {
                        Ok(t) => format!("{},{},{}", fmt_f(t.t), fmt_f(t.p), t.degenerate),
                        Err(_) => "NA,NA,NA".to_string(),
                    };
                    let _ = writeln!(
                        out,
                        "{mode},{},{},{},{},{stats}",
                        self.systems[a],
                        self.systems[b],
                        fmt_f(mean(&xa)),
                        fmt_f(mean(&xb))
                    );
                }
            }
        }
        out
    }

    /// Box-plot summary of F1 per system and mode.
    pub fn boxplot_csv(&self) -> String {
        let mut out = String::from("system,mode,min,q1,median,q3,max,mean\n");
        for (si, sys) in self.systems.iter().enumerate() {
            for (mi, mode) in self.modes.iter().enumerate() {
                if let Ok(b) = boxplot_stats(&self.f1_series(si, mi)) {
                    let _ = writeln!(
                        out,
                        "{sys},{mode},{},{},{},{},{},{}",
                        fmt_f(b.min),
                        fmt_f(b.q1),
                        fmt_f(b.median),
                        fmt_f(b.q3),
                        fmt_f(b.max),
                        fmt_f(b.mean)
                    );
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub percent: u32,
    pub en_docs: usize,
    pub es_docs: usize,
    /// Mean relaxed scores per system over the point's input sets.
    pub means: Vec<PairScore>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub variant: SweepVariant,
    pub systems: Vec<String>,
    pub rows: Vec<SweepRow>,
}

/// Percentage sweep under the relaxed metric, against the cross-lingual
/// gold restricted to each input set.
pub fn run_sweep(
    corpus: &Corpus,
    tables: &ResourceTables,
    systems: &[&dyn TimelineSystem],
    variant: SweepVariant,
    percentages: &[u32],
    sets_per_point: usize,
    seed: u64,
) -> Result<Sweep, HarnessError> {
    let pairs = ParallelPairs::from_corpus(corpus)?;
    let points = sweep_sets(&pairs, variant, percentages, sets_per_point, seed)?;
    let gold = corpus.gold(&GoldTask::Crosslingual)?;
    let modes = [MetricMode::Relaxed];
    let rows = points
        .par_iter()
        .map(|point| {
            let per_set = point
                .sets
                .iter()
                .map(|s| evaluate_subset(corpus, s, systems, tables, &gold, &modes))
                .collect::<Result<Vec<_>, _>>()?;
            let k = per_set.len() as f64;
            let means = (0..systems.len())
                .map(|si| {
                    let avg = |f: fn(&PairScore) -> f64| per_set.iter().map(|s| f(&s[si][0])).sum::<f64>() / k;
                    PairScore {
                        precision: avg(|s| s.precision),
                        recall: avg(|s| s.recall),
                        f1: avg(|s| s.f1),
                        ..PairScore::default()
                    }
                })
                .collect();
            let first = &point.sets[0];
            Ok(SweepRow {
                percent: point.percent,
                en_docs: first.iter().filter(|d| d.starts_with("en-")).count(),
                es_docs: first.iter().filter(|d| d.starts_with("es-")).count(),
                means,
            })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    Ok(Sweep {
        variant,
        systems: systems.iter().map(|s| s.name().to_string()).collect(),
        rows,
    })
}

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("percent,en_docs,es_docs");
        for sys in &self.systems {
            let _ = write!(out, ",{sys}_precision,{sys}_recall,{sys}_f1");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{},{},{}", r.percent, r.en_docs, r.es_docs);
            for s in &r.means {
                let _ = write!(out, ",{},{},{}", fmt_f(s.precision), fmt_f(s.recall), fmt_f(s.f1));
            }
            out.push('\n');
        }
        out
    }
}
