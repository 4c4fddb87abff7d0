use std::collections::BTreeSet;
use std::str::FromStr;

use super::closure::closure;
use super::graph::{graph_with_labels, row_label, MetricMode, TemporalGraph};
use super::reduce::reduce;
use crate::error::ScoreError;
use crate::timeline::Timeline;

/// Precision, recall and the counts behind them for one timeline.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PairScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// |Sys⁻|
    pub sys_reduced: usize,
    /// |Ref⁻|
    pub ref_reduced: usize,
    /// |Sys⁻ ∩ Ref⁺|
    pub sys_correct: usize,
    /// |Ref⁻ ∩ Sys⁺|
    pub ref_correct: usize,
    /// Event mentions in the reference timeline.
    pub ref_events: usize,
}

pub fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

impl PairScore {
    pub fn from_counts(
        sys_reduced: usize,
        ref_reduced: usize,
        sys_correct: usize,
        ref_correct: usize,
        ref_events: usize,
    ) -> Self {
        let (precision, recall) = if sys_reduced == 0 && ref_reduced == 0 {
            (1.0, 1.0)
        } else {
            (ratio(sys_correct, sys_reduced), ratio(ref_correct, ref_reduced))
        };
        Self {
            precision,
            recall,
            f1: f1(precision, recall),
            sys_reduced,
            ref_reduced,
            sys_correct,
            ref_correct,
            ref_events,
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Relaxed-mode labels for the rows of `sys`.
///
/// Each system row, in order, claims the not-yet-claimed reference row
/// sharing the most mentions with it (earliest on ties) and takes that
/// row's label. Rows sharing no mention with any free reference row are
/// labelled `sys:` plus their smallest mention.
pub fn align_rows(sys: &Timeline, reference: &Timeline) -> Vec<String> {
    let ref_sets: Vec<BTreeSet<_>> = reference.rows.iter().map(|r| r.mentions.iter().collect()).collect();
    let mut claimed = vec![false; reference.rows.len()];
    (0..sys.rows.len())
        .map(|i| {
            let best = ref_sets
                .iter()
                .enumerate()
                .filter(|(j, _)| !claimed[*j])
                .map(|(j, set)| (j, sys.rows[i].mentions.iter().filter(|m| set.contains(m)).count()))
                .filter(|(_, overlap)| *overlap > 0)
                .fold(None::<(usize, usize)>, |acc, cand| match acc {
                    Some(a) if a.1 >= cand.1 => Some(a),
                    _ => Some(cand),
                });
            match best {
                Some((j, _)) => {
                    claimed[j] = true;
                    row_label(reference, j)
                }
                None => format!("sys:{}", row_label(sys, i)),
            }
        })
        .collect()
}

/// Both graphs of a system/reference pair under `mode`.
pub fn pair_graphs(sys: &Timeline, reference: &Timeline, mode: MetricMode) -> (TemporalGraph, TemporalGraph) {
    let ref_graph = graph_with_labels(reference, mode, |i| row_label(reference, i));
    let sys_graph = if mode == MetricMode::Relaxed {
        let labels = align_rows(sys, reference);
        graph_with_labels(sys, mode, |i| labels[i].clone())
    } else {
        graph_with_labels(sys, mode, |i| row_label(sys, i))
    };
    (sys_graph, ref_graph)
}

/// Scores a system timeline against a reference:
/// P = |Sys⁻ ∩ Ref⁺| / |Sys⁻| and R = |Ref⁻ ∩ Sys⁺| / |Ref⁻|.
pub fn score_pair(sys: &Timeline, reference: &Timeline, mode: MetricMode) -> Result<PairScore, ScoreError> {
    let (sys_graph, ref_graph) = pair_graphs(sys, reference, mode);
    let sys_closure = closure(&sys_graph)?;
    let ref_closure = closure(&ref_graph)?;
    let sys_reduced = reduce(&sys_graph, mode);
    let ref_reduced = reduce(&ref_graph, mode);
    Ok(PairScore::from_counts(
        sys_reduced.edge_count(),
        ref_reduced.edge_count(),
        sys_reduced.intersection_count(&ref_closure),
        ref_reduced.intersection_count(&sys_closure),
        reference.mention_count(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AveragingMode {
    /// Sum numerators and denominators across timelines.
    #[default]
    Counts,
    /// Mean of per-timeline scores weighted by reference event count.
    EventWeighted,
}

impl FromStr for AveragingMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counts" | "micro" => Ok(AveragingMode::Counts),
            "events" | "event-weighted" => Ok(AveragingMode::EventWeighted),
            other => Err(format!("unknown averaging `{other}` (counts|events)")),
        }
    }
}

/// Corpus-level score over per-timeline scores. Count fields are always
/// summed.
pub fn micro_average(scores: &[PairScore], mode: AveragingMode) -> PairScore {
    let sum = |f: fn(&PairScore) -> usize| scores.iter().map(f).sum::<usize>();
    let summed = PairScore::from_counts(
        sum(|s| s.sys_reduced),
        sum(|s| s.ref_reduced),
        sum(|s| s.sys_correct),
        sum(|s| s.ref_correct),
        sum(|s| s.ref_events),
    );
    match mode {
        AveragingMode::Counts => summed,
        AveragingMode::EventWeighted => {
            if scores.is_empty() {
                return summed;
            }
            let total = summed.ref_events as f64;
            let weight = |s: &PairScore| {
                if total > 0.0 {
                    s.ref_events as f64 / total
                } else {
                    1.0 / scores.len() as f64
                }
            };
            let mean = |f: fn(&PairScore) -> f64| scores.iter().map(|s| weight(s) * f(s)).sum::<f64>();
            PairScore {
                precision: mean(|s| s.precision),
                recall: mean(|s| s.recall),
                f1: mean(|s| s.f1),
                ..summed
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timeline::parse_timeline;

    const GOLD: &str = "Boeing\n1\t2005\ten-18320#1#launched\n2\t2007-07-08\ten-18319#1#unveils\tes-18319#1#revelado\n";

    #[test]
    fn self_score_is_perfect() {
        let t = parse_timeline(GOLD).unwrap();
        for mode in MetricMode::ALL {
            let s = score_pair(&t, &t, mode).unwrap();
            assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0), "{mode}");
        }
    }

    #[test]
    fn empty_pair_is_perfect_and_empty_system_scores_zero() {
        let empty = Timeline::empty("Boeing");
        let s = score_pair(&empty, &empty, MetricMode::SemEval).unwrap();
        assert_eq!((s.precision, s.recall), (1.0, 1.0));
        let gold = parse_timeline(GOLD).unwrap();
        let s = score_pair(&empty, &gold, MetricMode::SemEval).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (0.0, 0.0, 0.0));
    }

    #[test]
    fn half_recall_arithmetic() {
        let s = PairScore::from_counts(1, 2, 1, 1, 0);
        assert_eq!(s.precision, 1.0);
        assert_eq!(s.recall, 0.5);
        assert!((s.f1 - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn micro_average_sums_counts() {
        let a = PairScore::from_counts(2, 2, 1, 2, 1);
        let b = PairScore::from_counts(2, 2, 2, 2, 1);
        let m = micro_average(&[a, b], AveragingMode::Counts);
        assert_eq!(m.precision, 0.75);
        assert_eq!(micro_average(&[a], AveragingMode::Counts), a);
    }

    #[test]
    fn alignment_prefers_overlap_then_order() {
        let gold = parse_timeline(GOLD).unwrap();
        let sys = parse_timeline("Boeing\n1\t2007-07-08\tes-18319#1#revelado\n2\t2008\ten-18320#9#other\n").unwrap();
        assert_eq!(
            align_rows(&sys, &gold),
            vec!["en-18319#1#unveils", "sys:en-18320#9#other"]
        );
    }
}
