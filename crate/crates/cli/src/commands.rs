use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use tlx_core::error::ExtractionError;
use tlx_core::harness::{
    accuracy_csv, anchor_accuracy, capture_csv, default_percentages, event_capture_stats, run_5050, run_extraction,
    run_sweep, score_directories, Corpus, ModuleMask,
};
use tlx_core::resources::{ResourceTables, INTERLANG_FILE, PREDMATRIX_FILE, REDIRECTS_FILE};
use tlx_core::timeline::{entity_slug, TIMELINE_EXTENSION};
use tlx_core::{serialize_timeline, SystemRegistry, TimelineSystem};

use crate::config::FileConfig;
use crate::{
    AccuracyArgs, CaptureArgs, Command, ExperimentCommand, ExtractArgs, FiftyFiftyArgs, ScoreArgs, StatsCommand,
    SweepArgs, UsageError,
};

const DEFAULT_SEED: u64 = 0;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Extract(a) => {
            let cfg = a.corpus.resolve()?;
            in_pool(cfg.jobs, || extract(&a, &cfg))
        }
        Command::Score(a) => in_pool(a.jobs, || score(&a)),
        Command::Experiment(ExperimentCommand::FiftyFifty(a)) => {
            let cfg = a.corpus.resolve()?;
            in_pool(cfg.jobs, || fifty_fifty(&a, &cfg))
        }
        Command::Experiment(ExperimentCommand::Sweep(a)) => {
            let cfg = a.corpus.resolve()?;
            in_pool(cfg.jobs, || sweep(&a, &cfg))
        }
        Command::Stats(StatsCommand::Capture(a)) => {
            let cfg = a.corpus.resolve()?;
            in_pool(cfg.jobs, || capture(&a, &cfg))
        }
        Command::Stats(StatsCommand::Accuracy(a)) => {
            let cfg = a.corpus.resolve()?;
            in_pool(cfg.jobs, || accuracy(&a, &cfg))
        }
    }
}

pub fn is_usage_error(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<UsageError>()
            || matches!(
                c.downcast_ref::<ExtractionError>(),
                Some(ExtractionError::MissingResources(..) | ExtractionError::UnknownSystem(_))
            )
    })
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("starting worker pool")?
            .install(f),
        None => f(),
    }
}

fn load_tables(cfg: &FileConfig) -> Result<ResourceTables> {
    let pick = |explicit: &Option<PathBuf>, name: &str| {
        explicit
            .clone()
            .or_else(|| cfg.resources.as_ref().map(|d| d.join(name)).filter(|p| p.is_file()))
    };
    let redirects = pick(&cfg.redirects, REDIRECTS_FILE);
    let interlang = pick(&cfg.interlang, INTERLANG_FILE);
    let predmatrix = pick(&cfg.predmatrix, PREDMATRIX_FILE);
    if let Some(dir) = &cfg.resources {
        if !dir.is_dir() {
            bail!("resource directory {} does not exist", dir.display());
        }
    }
    Ok(ResourceTables::load(
        redirects.as_deref(),
        interlang.as_deref(),
        predmatrix.as_deref(),
    )?)
}

fn load_corpus(cfg: &FileConfig) -> Result<Corpus> {
    let manifest = cfg
        .manifest
        .as_ref()
        .ok_or_else(|| usage("no corpus manifest: pass --manifest or set it in --config"))?;
    Ok(Corpus::from_path(manifest)?)
}

/// Looks up the named systems and checks their resource needs before any
/// corpus work starts.
fn select_systems<'r>(
    registry: &'r SystemRegistry,
    names: &[String],
    tables: &ResourceTables,
) -> Result<Vec<&'r dyn TimelineSystem>> {
    if names.is_empty() {
        return Err(usage("no system selected"));
    }
    names
        .iter()
        .map(|n| {
            let sys = registry.get(n).map_err(|_| {
                usage(format!(
                    "unknown system `{n}` (available: {})",
                    registry.names().collect::<Vec<_>>().join(", ")
                ))
            })?;
            sys.check_resources(tables).map_err(|e| usage(e.to_string()))?;
            Ok(sys)
        })
        .collect()
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Writes into `out` when given, otherwise prints.
fn emit(out: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match out {
        Some(dir) => {
            create_dir(dir)?;
            write_file(&dir.join(name), contents)?;
            eprintln!("wrote {}", dir.join(name).display());
            Ok(())
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn extract(a: &ExtractArgs, cfg: &FileConfig) -> Result<()> {
    let tables = load_tables(cfg)?;
    let registry = SystemRegistry::builtin();
    let system = select_systems(&registry, std::slice::from_ref(&a.system), &tables)?[0];
    let corpus = load_corpus(cfg)?;
    let language = match a.lang.as_str() {
        "all" => None,
        l if corpus.languages().contains(&l) => Some(l),
        l => {
            return Err(usage(format!(
                "no `{l}` documents in the corpus (languages: {})",
                corpus.languages().join(", ")
            )))
        }
    };
    let timelines = run_extraction(&corpus, system, &tables, language)?;
    create_dir(&a.out)?;
    for t in &timelines {
        let path = a.out.join(format!("{}.{TIMELINE_EXTENSION}", entity_slug(&t.target)));
        write_file(&path, &serialize_timeline(t))?;
        if t.rows.is_empty() {
            eprintln!("warning: no events found for `{}`", t.target);
        }
    }
    eprintln!(
        "{}: wrote {} timeline(s) to {}",
        system.name(),
        timelines.len(),
        a.out.display()
    );
    Ok(())
}

fn score(a: &ScoreArgs) -> Result<()> {
    if a.metric.is_empty() {
        return Err(usage("no metric selected"));
    }
    let scored = score_directories(&a.system, &a.gold, &a.metric, a.average)?;
    for name in &scored.missing {
        eprintln!("warning: no system timeline for `{name}`; scored as empty");
    }
    print!("{}", scored.report.to_table());
    if let Some(dir) = &a.out {
        create_dir(dir)?;
        write_file(&dir.join("scores.csv"), &scored.report.to_csv())?;
    }
    Ok(())
}

fn fifty_fifty(a: &FiftyFiftyArgs, cfg: &FileConfig) -> Result<()> {
    let tables = load_tables(cfg)?;
    let registry = SystemRegistry::builtin();
    let systems = select_systems(&registry, &a.systems, &tables)?;
    if a.metric.is_empty() {
        return Err(usage("no metric selected"));
    }
    let corpus = load_corpus(cfg)?;
    let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let result = run_5050(&corpus, &tables, &systems, &a.metric, a.n, seed)?;
    create_dir(&a.out)?;
    write_file(&a.out.join("splits.csv"), &result.splits_csv())?;
    write_file(&a.out.join("ttest.csv"), &result.ttest_csv())?;
    write_file(&a.out.join("boxplot.csv"), &result.boxplot_csv())?;
    eprintln!("{} split(s), seed {seed}: results in {}", a.n, a.out.display());
    Ok(())
}

fn sweep(a: &SweepArgs, cfg: &FileConfig) -> Result<()> {
    let tables = load_tables(cfg)?;
    let registry = SystemRegistry::builtin();
    let systems = select_systems(&registry, &a.systems, &tables)?;
    if a.sets == 0 {
        return Err(usage("--sets must be at least 1"));
    }
    let percentages = if a.percent.is_empty() {
        default_percentages()
    } else {
        a.percent.clone()
    };
    if let Some(p) = percentages.iter().find(|p| **p > 100) {
        return Err(usage(format!("percentage {p} is above 100")));
    }
    let corpus = load_corpus(cfg)?;
    let seed = a.seed.or(cfg.seed).unwrap_or(DEFAULT_SEED);
    let result = run_sweep(&corpus, &tables, &systems, a.variant, &percentages, a.sets, seed)?;
    create_dir(&a.out)?;
    let path = a.out.join(format!("sweep_{}.csv", a.variant));
    write_file(&path, &result.to_csv())?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn capture(a: &CaptureArgs, cfg: &FileConfig) -> Result<()> {
    let tables = load_tables(cfg)?;
    let corpus = load_corpus(cfg)?;
    let masks: Vec<ModuleMask> = if a.layers.is_empty() {
        ["srl", "srl,ner", "srl,ner,cr", "all"]
            .iter()
            .map(|m| m.parse().expect("valid mask"))
            .collect()
    } else {
        a.layers.clone()
    };
    let mut out = String::new();
    for mask in masks {
        let rows = event_capture_stats(&corpus, &tables, mask)?;
        let csv = capture_csv(&rows, mask);
        // keep a single header
        let body = if out.is_empty() {
            csv.as_str()
        } else {
            csv.split_once('\n').map_or("", |(_, b)| b)
        };
        out.push_str(body);
    }
    emit(a.out.as_deref(), "capture.csv", &out)
}

fn accuracy(a: &AccuracyArgs, cfg: &FileConfig) -> Result<()> {
    let tables = load_tables(cfg)?;
    let registry = SystemRegistry::builtin();
    let system = select_systems(&registry, std::slice::from_ref(&a.system), &tables)?[0];
    let corpus = load_corpus(cfg)?;
    let mut per_task = Vec::new();
    for task in corpus.manifest.gold.keys() {
        let gold = corpus.gold(task)?;
        let sys = run_extraction(&corpus, system, &tables, task.language())?;
        per_task.push((task.clone(), anchor_accuracy(&sys, &gold)));
    }
    if per_task.is_empty() {
        eprintln!("warning: the manifest lists no gold timelines");
    }
    emit(a.out.as_deref(), "accuracy.csv", &accuracy_csv(&per_task))
}
