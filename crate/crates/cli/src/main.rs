//! `tlx`: extract, score and evaluate cross-document entity timelines.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tlx_core::harness::{ModuleMask, SweepVariant};
use tlx_core::scorer::{AveragingMode, MetricMode};

use crate::config::FileConfig;

#[derive(Debug, Parser)]
#[command(
    name = "tlx",
    version,
    about = "Cross-document, cross-lingual timeline extraction and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract one timeline per manifest target.
    Extract(ExtractArgs),
    /// Score system timelines against gold timelines.
    Score(ScoreArgs),
    /// Run a split-based evaluation protocol.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Pipeline diagnostics.
    #[command(subcommand)]
    Stats(StatsCommand),
}

#[derive(Debug, Subcommand)]
enum ExperimentCommand {
    /// Random 50-50 language mixes of the parallel corpus.
    #[command(name = "5050")]
    FiftyFifty(FiftyFiftyArgs),
    /// Scores as the share of one language grows.
    Sweep(SweepArgs),
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// Share of gold event mentions each layer combination can produce.
    Capture(CaptureArgs),
    /// Anchor accuracy of a system on mentions it shares with the gold.
    Accuracy(AccuracyArgs),
}

/// Corpus and resource locations shared by the corpus-driven commands.
#[derive(Debug, Args)]
struct CorpusArgs {
    /// TOML file with defaults for these options.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Corpus manifest (documents, targets, gold directories).
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Directory holding redirects.tsv, interlang.tsv and predmatrix.tsv.
    #[arg(long, env = "TLX_RESOURCES")]
    resources: Option<PathBuf>,
    #[arg(long)]
    redirects: Option<PathBuf>,
    #[arg(long)]
    interlang: Option<PathBuf>,
    #[arg(long)]
    predmatrix: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "dlt")]
    system: String,
    /// `en`, `es`, ... or `all` for every document.
    #[arg(long, default_value = "all")]
    lang: String,
    /// Output directory for the `.timeline` files.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Directory of gold `.timeline` files.
    #[arg(long)]
    gold: PathBuf,
    /// Directory of system `.timeline` files with matching names.
    #[arg(long)]
    system: PathBuf,
    #[arg(long, value_delimiter = ',', default_values = ["semeval", "strict", "relaxed"])]
    metric: Vec<MetricMode>,
    #[arg(long, default_value = "counts")]
    average: AveragingMode,
    /// Directory for scores.csv; the table always goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct FiftyFiftyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_delimiter = ',', default_values = ["bte", "dlt", "cle"])]
    systems: Vec<String>,
    #[arg(long, value_delimiter = ',', default_values = ["semeval", "strict", "relaxed"])]
    metric: Vec<MetricMode>,
    /// Number of random splits.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_delimiter = ',', default_values = ["dlt", "cle"])]
    systems: Vec<String>,
    #[arg(long, default_value = "mix90")]
    variant: SweepVariant,
    /// Percentage points (default 5, 10, ..., 95).
    #[arg(long, value_delimiter = ',')]
    percent: Vec<u32>,
    /// Random input sets per percentage point.
    #[arg(long, default_value_t = 10)]
    sets: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CaptureArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Layer combinations, e.g. `--layers srl --layers srl,ner,cr`
    /// (default: the cumulative sequence srl … all).
    #[arg(long)]
    layers: Vec<ModuleMask>,
    /// Directory for capture.csv (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AccuracyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, default_value = "dlt")]
    system: String,
    /// Directory for accuracy.csv (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Bad invocation: reported with exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if commands::is_usage_error(&e) {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

impl CorpusArgs {
    /// Merges the optional config file under the flags.
    fn resolve(&self) -> anyhow::Result<FileConfig> {
        let file = match &self.config {
            Some(p) => FileConfig::load(p).map_err(|e| UsageError(format!("{e:#}")))?,
            None => FileConfig::default(),
        };
        Ok(FileConfig {
            manifest: self.manifest.clone().or(file.manifest),
            resources: self.resources.clone().or(file.resources),
            redirects: self.redirects.clone().or(file.redirects),
            interlang: self.interlang.clone().or(file.interlang),
            predmatrix: self.predmatrix.clone().or(file.predmatrix),
            seed: file.seed,
            jobs: self.jobs.or(file.jobs),
        })
    }
}
