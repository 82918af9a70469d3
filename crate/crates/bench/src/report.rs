use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use lbgraph::engine::{KernelTag, MetricsRecord};
use lbgraph::graph::{build_histogram, CsrGraph, DegreeHistogram};
use lbgraph::strategies::SplitGraph;
use serde::{Deserialize, Serialize};

use crate::config::ReportFormat;
use crate::error::BenchError;
use crate::run::{BenchmarkResult, ImbalanceSummary};

pub const COLUMNS: [&str; 15] = [
    "strategy",
    "algo",
    "graph",
    "iteration",
    "sub_iteration",
    "active_items",
    "threads",
    "max_work",
    "avg_work",
    "stddev_work",
    "atomic_relax_ops",
    "atomic_push_ops",
    "kernel_ms",
    "overhead_ms",
    "status",
];

/// One report line. Summary rows leave `iteration`, `sub_iteration` and
/// `threads` empty, sum the counters and timings of the strategy's
/// invocations, and put the summed per-invocation stddev in `stddev_work`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub strategy: String,
    pub algo: String,
    pub graph: String,
    pub iteration: Option<usize>,
    pub sub_iteration: Option<usize>,
    pub active_items: u64,
    pub threads: Option<usize>,
    pub max_work: u64,
    pub avg_work: f64,
    pub stddev_work: f64,
    pub atomic_relax_ops: u64,
    pub atomic_push_ops: u64,
    pub kernel_ms: f64,
    pub overhead_ms: f64,
    pub status: String,
}

impl ReportRow {
    pub fn is_summary(&self) -> bool {
        self.iteration.is_none()
    }
}

fn invocation_row(result: &BenchmarkResult, strategy: &str, r: &MetricsRecord) -> ReportRow {
    ReportRow {
        strategy: strategy.to_string(),
        algo: result.algo.to_string(),
        graph: result.graph.clone(),
        iteration: Some(r.iteration),
        sub_iteration: r.sub_iteration,
        active_items: r.active_items as u64,
        threads: Some(r.threads()),
        max_work: r.max_work(),
        avg_work: r.avg_work(),
        stddev_work: r.stddev_work(),
        atomic_relax_ops: r.atomic_relax_ops,
        atomic_push_ops: r.atomic_push_ops,
        kernel_ms: r.kernel_wall_time.as_secs_f64() * 1e3,
        overhead_ms: r.overhead_wall_time.as_secs_f64() * 1e3,
        status: if r.strategy == KernelTag::WdFallback { "WD-fallback" } else { "ok" }.to_string(),
    }
}

fn summary_row(result: &BenchmarkResult, s: &ImbalanceSummary) -> ReportRow {
    ReportRow {
        strategy: s.strategy.to_string(),
        algo: result.algo.to_string(),
        graph: result.graph.clone(),
        iteration: None,
        sub_iteration: None,
        active_items: s.active_items,
        threads: None,
        max_work: s.max_work,
        avg_work: s.avg_work,
        stddev_work: s.summed_stddev,
        atomic_relax_ops: s.atomic_relax_ops,
        atomic_push_ops: s.atomic_push_ops,
        kernel_ms: s.kernel_time.as_secs_f64() * 1e3,
        overhead_ms: s.overhead_time.as_secs_f64() * 1e3,
        status: s.status.to_string(),
    }
}

/// Invocation rows of each strategy followed by its summary row.
pub fn report_rows(result: &BenchmarkResult) -> Vec<ReportRow> {
    let mut rows = Vec::new();
    for o in &result.outcomes {
        let tag = o.summary.strategy.to_string();
        if let Some(run) = &o.run {
            rows.extend(run.records.iter().map(|r| invocation_row(result, &tag, r)));
        }
        rows.push(summary_row(result, &o.summary));
    }
    rows
}

pub fn write_rows<W: Write>(rows: &[ReportRow], out: W, format: ReportFormat) -> Result<(), BenchError> {
    match format {
        ReportFormat::Csv => {
            // Header written by hand so an empty report still has one.
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(COLUMNS)?;
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn emit_report(results: &[BenchmarkResult], path: impl AsRef<Path>, format: ReportFormat) -> Result<(), BenchError> {
    let rows: Vec<ReportRow> = results.iter().flat_map(report_rows).collect();
    let file = BufWriter::new(File::create(path)?);
    write_rows(&rows, file, format)
}

pub fn read_rows<R: Read>(input: R, format: ReportFormat) -> Result<Vec<ReportRow>, BenchError> {
    match format {
        ReportFormat::Csv => Ok(csv::Reader::from_reader(input).deserialize().collect::<Result<_, _>>()?),
        ReportFormat::Json => Ok(serde_json::from_reader(input)?),
    }
}

fn write_histogram(h: &DegreeHistogram, path: &Path) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(BufWriter::new(File::create(path)?));
    w.write_record(["degree_bin_low", "degree_bin_high", "node_count"])?;
    for (i, &count) in h.counts.iter().enumerate() {
        let (lo, hi) = h.bin_bounds(i + 1);
        w.write_record([lo.to_string(), hi.to_string(), count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the out-degree histogram of `g` as CSV and returns it.
pub fn emit_degree_histogram(g: &CsrGraph, bins: usize, path: impl AsRef<Path>) -> Result<DegreeHistogram, BenchError> {
    let h = build_histogram(g, bins)?.with_mdt();
    write_histogram(&h, path.as_ref())?;
    Ok(h)
}

/// Same for the graph after node splitting, parents and children alike.
pub fn emit_split_degree_histogram(split: &SplitGraph, bins: usize, path: impl AsRef<Path>) -> Result<DegreeHistogram, BenchError> {
    emit_degree_histogram(&split.graph, bins, path)
}
