//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the PASS/FAIL lines always reach the console.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::boeing::{boeing, coreference_edge, expected_graph, expected_reduced};
use common::oracle::{naive_closure, random_graphs};
use common::{corpus, fixtures, tables};
use tlx_core::extraction::{extract_events, AnchorSource, AnchoringMode, TargetEntity};
use tlx_core::harness::{evaluate, paired_t_test, read_timeline, run_extraction, Corpus, GoldTask};
use tlx_core::scorer::{
    closure, reduce, score_pair, timeline_to_graph, AveragingMode, MetricMode, PairScore, Relation,
};
use tlx_core::timeline::TimelineRow;
use tlx_core::{parse_document, parse_timeline, serialize_document, serialize_timeline, SystemRegistry, Timeline};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", start.elapsed())
    })
}

fn fixture_timelines() -> Vec<(PathBuf, Timeline)> {
    let mut out = Vec::new();
    for dir in ["gold/en", "gold/es", "gold/xl", "boeing_example"] {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures().join(dir))
            .unwrap()
            .map(|e| e.unwrap().path())
            .collect();
        paths.sort();
        for p in paths {
            let t = read_timeline(&p).unwrap();
            out.push((p, t));
        }
    }
    out
}

fn self_identity() -> Result<(), String> {
    let start = Instant::now();
    let timelines = fixture_timelines();
    for (path, t) in &timelines {
        for mode in MetricMode::ALL {
            let s = score_pair(t, t, mode).map_err(|e| e.to_string())?;
            ensure((s.precision, s.recall, s.f1) == (1.0, 1.0, 1.0), || {
                format!("{} {mode}: {s:?}", path.display())
            })?;
        }
    }
    within(start, Duration::from_secs(1))
}

const GRAPHS: usize = 1000;
const GRAPH_SEED: u64 = 20240521;

fn closure_oracle() -> Result<(), String> {
    let start = Instant::now();
    for (i, g) in random_graphs(GRAPH_SEED, GRAPHS).iter().enumerate() {
        let ours = closure(g).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(ours.edges() == &naive_closure(g), || {
            format!("graph {i} differs from the oracle")
        })?;
    }
    within(start, Duration::from_secs(30))
}

fn reduction_minimality() -> Result<(), String> {
    let start = Instant::now();
    for (i, g) in random_graphs(GRAPH_SEED, GRAPHS).iter().enumerate() {
        let full = closure(g).unwrap();
        for mode in [MetricMode::SemEval, MetricMode::Strict] {
            let r = reduce(g, mode);
            ensure(closure(&r).unwrap().edges() == full.edges(), || {
                format!("graph {i} {mode}: closure changed")
            })?;
            for e in r.edges() {
                if mode == MetricMode::Strict && e.relation == Relation::Identity {
                    continue;
                }
                let mut smaller = r.clone();
                smaller.remove_edge(e);
                ensure(closure(&smaller).unwrap().edges() != full.edges(), || {
                    format!("graph {i} {mode}: {e} is redundant")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn running_example() -> Result<(), String> {
    let t = boeing(&fixtures());
    for mode in MetricMode::ALL {
        let g = timeline_to_graph(&t, mode);
        ensure(g.edges() == &expected_graph(mode), || format!("{mode} graph differs"))?;
        let r = reduce(&g, mode);
        ensure(r.edges() == &expected_reduced(mode), || {
            format!("{mode} reduction differs")
        })?;
    }
    let strict = reduce(&timeline_to_graph(&t, MetricMode::Strict), MetricMode::Strict);
    ensure(strict.contains(&coreference_edge(MetricMode::Strict)), || {
        "IDENTITY link dropped by strict reduction".into()
    })
}

fn anchoring_example() -> Result<(), String> {
    let doc = parse_document(&std::fs::read(fixtures().join("keynote_en.ann")).unwrap()).map_err(|e| e.to_string())?;
    let jobs = TargetEntity::new(
        "Steve Jobs",
        Some("http://dbpedia.org/resource/Steve_Jobs".into()),
        "Jobs",
    );
    let got: HashMap<String, (Option<String>, AnchorSource)> =
        extract_events(&doc, &jobs, &tables(), AnchoringMode::Implicit)
            .into_iter()
            .map(|e| (e.extent, (e.anchor.map(|a| a.to_string()), e.source)))
            .collect();
    let expect = |extent: &str, anchor: Option<&str>, source| {
        let want = (anchor.map(str::to_string), source);
        ensure(got.get(extent) == Some(&want), || {
            format!("{extent}: got {:?}, want {want:?}", got.get(extent))
        })
    };
    expect("gave", Some("2005-06-06"), AnchorSource::ExplicitTlink)?;
    expect("announced", Some("2005-06-06"), AnchorSource::Inherited)?;
    expect("says", Some("2005-06-07"), AnchorSource::DctFallback)?;
    expect("keynote", None, AnchorSource::None)
}

fn micro(corpus: &Corpus, system: &str, task: &GoldTask) -> Result<Vec<PairScore>, String> {
    let registry = SystemRegistry::builtin();
    let sys = registry.get(system).map_err(|e| e.to_string())?;
    let gold = corpus.gold(task).map_err(|e| e.to_string())?;
    let timelines = run_extraction(corpus, sys, &tables(), task.language()).map_err(|e| e.to_string())?;
    let report = evaluate(&timelines, &gold, &MetricMode::ALL, AveragingMode::Counts).map_err(|e| e.to_string())?;
    Ok(MetricMode::ALL.iter().map(|&m| *report.average(m).unwrap()).collect())
}

fn system_ordering() -> Result<(), String> {
    let corpus = corpus();
    for lang in ["en", "es"] {
        let task = GoldTask::Language(lang.into());
        let (bte, dlt) = (micro(&corpus, "bte", &task)?, micro(&corpus, "dlt", &task)?);
        for (i, mode) in MetricMode::ALL.iter().enumerate() {
            ensure(dlt[i].f1 > bte[i].f1, || {
                format!("{lang} {mode}: DLT {} <= BTE {}", dlt[i].f1, bte[i].f1)
            })?;
        }
    }
    let dlt = micro(&corpus, "dlt", &GoldTask::Crosslingual)?;
    let cle = micro(&corpus, "cle", &GoldTask::Crosslingual)?;
    ensure(cle[1].f1 >= dlt[1].f1, || {
        format!("strict: CLE {} < DLT {}", cle[1].f1, dlt[1].f1)
    })
}

fn semeval_coincidence() -> Result<(), String> {
    let corpus = corpus();
    let dlt = micro(&corpus, "dlt", &GoldTask::Crosslingual)?;
    let cle = micro(&corpus, "cle", &GoldTask::Crosslingual)?;
    ensure(dlt[0] == cle[0], || format!("DLT {:?} vs CLE {:?}", dlt[0], cle[0]))
}

fn run_5050_cli(out: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let status = Command::new(env!("CARGO_BIN_EXE_tlx"))
        .args(["experiment", "5050", "--n", "100", "--seed", "7", "--manifest"])
        .arg(fixtures().join("manifest.tsv"))
        .arg("--resources")
        .arg(fixtures().join("resources"))
        .arg("--out")
        .arg(out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        String::from_utf8_lossy(&status.stderr).into_owned()
    })?;
    ["splits.csv", "ttest.csv", "boxplot.csv"]
        .iter()
        .map(|f| {
            std::fs::read(out.join(f))
                .map(|b| (f.to_string(), b))
                .map_err(|e| format!("{f}: {e}"))
        })
        .collect()
}

fn harness_determinism() -> Result<(), String> {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let first = run_5050_cli(&dir.path().join("a"))?;
    let second = run_5050_cli(&dir.path().join("b"))?;
    ensure(first == second, || "outputs differ between runs".into())?;
    ensure(first[0].1.iter().filter(|b| **b == b'\n').count() == 101, || {
        "expected 100 split rows".into()
    })?;
    let d = [
        0.0,
        2.0,
        0.0,
        2.0,
        0.0,
        2.0,
        0.0,
        2.0,
        1.0 - 0.5f64.sqrt(),
        1.0 + 0.5f64.sqrt(),
    ];
    let t = paired_t_test(&d, &[0.0; 10]).map_err(|e| e.to_string())?;
    ensure((t.t - 3.162).abs() <= 1e-3, || format!("t = {}", t.t))?;
    within(start, Duration::from_secs(120))
}

fn format_round_trips() -> Result<(), String> {
    let mut anns = vec![fixtures().join("keynote_en.ann")];
    for e in std::fs::read_dir(fixtures().join("corpus")).unwrap() {
        anns.push(e.unwrap().path());
    }
    for p in anns {
        let text = std::fs::read_to_string(&p).unwrap();
        let doc = parse_document(text.as_bytes()).map_err(|e| format!("{}: {e}", p.display()))?;
        ensure(serialize_document(&doc) == text, || {
            format!("{} does not round-trip", p.display())
        })?;
    }
    for (p, t) in fixture_timelines() {
        let text = std::fs::read_to_string(&p).unwrap();
        ensure(serialize_timeline(&t) == text, || {
            format!("{} does not round-trip", p.display())
        })?;
    }
    let corrupt = "Boeing\n1\t2005\ten-18320#1#launched\n2\t2007-07-08\ten-18319#1#unveils\n1\t2007-07-10\ten-18320#2#relationship\n";
    match parse_timeline(corrupt) {
        Err(e) if e.line == 4 => Ok(()),
        other => Err(format!("corrupted ordinal not rejected at line 4: {other:?}")),
    }
}

fn relaxed_completeness() -> Result<(), String> {
    let corpus = corpus();
    for task in corpus.manifest.gold.keys() {
        for gold in corpus.gold(task).map_err(|e| e.to_string())? {
            for pick_last in [false, true] {
                let sys = Timeline {
                    target: gold.target.clone(),
                    rows: gold
                        .rows
                        .iter()
                        .map(|r| TimelineRow {
                            ordinal: r.ordinal,
                            anchor: r.anchor,
                            mentions: vec![if pick_last {
                                r.mentions.last()
                            } else {
                                r.mentions.first()
                            }
                            .unwrap()
                            .clone()],
                        })
                        .collect(),
                };
                let s = score_pair(&sys, &gold, MetricMode::Relaxed).map_err(|e| e.to_string())?;
                ensure(s.recall == 1.0, || {
                    format!("{task}/{}: recall {}", gold.target, s.recall)
                })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 10] = [
        ("scorer self-identity", self_identity),
        ("closure equals brute-force fixpoint", closure_oracle),
        ("reduction round-trip and minimality", reduction_minimality),
        ("running-example graphs and reductions", running_example),
        ("tense-keyed anchoring example", anchoring_example),
        ("system ordering on the mini-corpus", system_ordering),
        ("CLE/DLT coincide under SemEval", semeval_coincidence),
        ("50-50 determinism and t statistic", harness_determinism),
        ("format round-trips and ordinal rejection", format_round_trips),
        ("relaxed completeness", relaxed_completeness),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = BTreeSet::new();
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({ms} ms)", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name} ({ms} ms): {why}", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed {failed:?}");
        ExitCode::FAILURE
    }
}
