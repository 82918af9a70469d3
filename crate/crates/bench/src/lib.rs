//! Benchmark harness for the lbgraph strategies: graph sources, runs with
//! optional oracle verification, imbalance summaries and CSV/JSON reports.

pub mod config;
pub mod error;
pub mod report;
pub mod run;

pub use config::{parse_strategies, GenSpec, GraphFormat, GraphSource, ReportFormat, RunConfig};
pub use error::BenchError;
pub use report::{emit_degree_histogram, emit_report, emit_split_degree_histogram, read_rows, report_rows, write_rows, ReportRow, COLUMNS};
pub use run::{oracle, run_benchmark, run_on_graph, BenchmarkResult, ImbalanceSummary, Status, StrategyOutcome};

/// Graphs run by `--suite paper-desk`, before any files given with `--graph`.
pub fn paper_desk_suite() -> Vec<GraphSource> {
    use lbgraph::graph::RmatParams;
    vec![
        GraphSource::Generated(GenSpec::Rmat { scale: 14, edge_factor: 8, params: RmatParams::default() }),
        GraphSource::Generated(GenSpec::Rmat { scale: 16, edge_factor: 8, params: RmatParams::default() }),
        GraphSource::Generated(GenSpec::Er { scale: 14, edge_factor: 4 }),
    ]
}
