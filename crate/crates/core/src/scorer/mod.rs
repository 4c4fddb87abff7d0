//! Timeline evaluation through temporal graphs.
//!
//! Both timelines are turned into graphs of BEFORE / SIMULTANEOUS /
//! IDENTITY relations; precision is the share of the reduced system graph
//! found in the closure of the reference, recall the converse.

mod closure;
mod graph;
mod metric;
mod reduce;
mod report;

pub use closure::{closure, consistency_check, ConsistencyViolation};
pub use graph::{timeline_to_graph, Edge, MetricMode, NodeId, Relation, TemporalGraph};
pub use metric::{align_rows, f1, micro_average, pair_graphs, score_pair, AveragingMode, PairScore};
pub use reduce::reduce;
pub use report::{ScoreReport, ScoreRow, CSV_HEADER, MICRO_LABEL};
