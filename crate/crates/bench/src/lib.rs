//! Benchmark harness for `drmax-core`: edge-list loading, seeded
//! experiments on the revenue objective, and CSV/JSON reports.

pub mod error;
pub mod experiment;
pub mod graph;
pub mod report;

pub use error::{BenchError, Result};
pub use experiment::{run_experiment, run_on_graph, ExperimentConfig, InputSpec, OutputSpec, TrialReport};
pub use graph::{load_edge_list, load_graph, parse_edge_list, EdgeList};
pub use report::{read_report, write_report, write_report_to, ReportFormat, ReportRow};
