//! Corpus-level runs: extraction over a manifest, scoring, the 50-50 and
//! percentage-sweep protocols, and capture/accuracy diagnostics.

mod diagnostics;
mod evaluate;
mod experiment;
mod manifest;
mod split;
mod stats;

pub use diagnostics::{
    accuracy_csv, anchor_accuracy, capture_counts, capture_csv, captured_mentions, event_capture_stats, strip_layers,
    AccuracyRow, CaptureRow, ModuleMask,
};
pub use evaluate::{evaluate, run_extraction, score_directories, DirectoryScore};
pub use experiment::{evaluate_subset, run_5050, run_sweep, FiftyFifty, Sweep, SweepRow};
pub use manifest::{read_document, read_timeline, Corpus, CorpusManifest, GoldTask, ManifestDoc};
pub use split::{
    default_percentages, percent_count, split_5050, sweep_sets, DocSubset, ParallelPairs, SweepPoint, SweepVariant,
};
pub use stats::{boxplot_stats, paired_t_test, quantile, SplitStats, TTest};
