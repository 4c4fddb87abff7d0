use std::fmt::Write as _;

use super::graph::MetricMode;
use super::metric::{micro_average, AveragingMode, PairScore};

pub const CSV_HEADER: &str = "timeline,mode,precision,recall,f1,sys_reduced,ref_reduced,sys_correct,ref_correct";

/// Label used for the corpus-level rows.
pub const MICRO_LABEL: &str = "MICRO";

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub timeline: String,
    pub mode: MetricMode,
    pub score: PairScore,
}

/// Per-timeline scores plus one corpus-level row per metric mode.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreReport {
    pub rows: Vec<ScoreRow>,
    pub averages: Vec<(MetricMode, PairScore)>,
}

impl ScoreReport {
    /// Builds the report; corpus rows follow the order in which modes first
    /// appear.
    pub fn new(rows: Vec<ScoreRow>, averaging: AveragingMode) -> Self {
        let mut modes: Vec<MetricMode> = Vec::new();
        for r in &rows {
            if !modes.contains(&r.mode) {
                modes.push(r.mode);
            }
        }
        let averages = modes
            .into_iter()
            .map(|mode| {
                let scores: Vec<PairScore> = rows.iter().filter(|r| r.mode == mode).map(|r| r.score).collect();
                (mode, micro_average(&scores, averaging))
            })
            .collect();
        Self { rows, averages }
    }

    pub fn average(&self, mode: MetricMode) -> Option<&PairScore> {
        self.averages.iter().find(|(m, _)| *m == mode).map(|(_, s)| s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let all = self
            .rows
            .iter()
            .map(|r| (r.timeline.as_str(), r.mode, &r.score))
            .chain(self.averages.iter().map(|(m, s)| (MICRO_LABEL, *m, s)));
        for (name, mode, s) in all {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{},{},{},{}",
                csv_field(name),
                mode,
                s.precision,
                s.recall,
                s.f1,
                s.sys_reduced,
                s.ref_reduced,
                s.sys_correct,
                s.ref_correct
            );
        }
        out
    }

    /// Fixed-width table with scores as percentages.
    pub fn to_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.timeline.chars().count())
            .chain([MICRO_LABEL.len(), "timeline".len()])
            .max()
            .unwrap_or(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:<8}  {:>7}  {:>7}  {:>7}  {:>6}  {:>6}",
            "timeline", "mode", "P", "R", "F1", "|Sys-|", "|Ref-|"
        );
        let line = |out: &mut String, name: &str, mode: MetricMode, s: &PairScore| {
            let _ = writeln!(
                out,
                "{:<width$}  {:<8}  {:>7.2}  {:>7.2}  {:>7.2}  {:>6}  {:>6}",
                name,
                mode.as_str(),
                s.precision * 100.0,
                s.recall * 100.0,
                s.f1 * 100.0,
                s.sys_reduced,
                s.ref_reduced
            );
        };
        for r in &self.rows {
            line(&mut out, &r.timeline, r.mode, &r.score);
        }
        for (mode, s) in &self.averages {
            line(&mut out, MICRO_LABEL, *mode, s);
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_micro_row_per_mode() {
        let s = PairScore::from_counts(2, 2, 1, 1, 2);
        let report = ScoreReport::new(
            vec![
                ScoreRow {
                    timeline: "boeing".into(),
                    mode: MetricMode::Strict,
                    score: s,
                },
                ScoreRow {
                    timeline: "airbus".into(),
                    mode: MetricMode::Strict,
                    score: s,
                },
            ],
            AveragingMode::Counts,
        );
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "MICRO,strict,0.500000,0.500000,0.500000,4,4,2,2");
        assert!(report.to_table().contains("MICRO"));
    }
}
