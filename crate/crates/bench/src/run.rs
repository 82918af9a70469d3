use std::fmt;
use std::time::Duration;

use lbgraph::engine::{Dist, MetricsRecord};
use lbgraph::graph::CsrGraph;
use lbgraph::oracles::{dijkstra, sequential_bfs, verify, VerificationReport};
use lbgraph::strategies::{RelaxOp, Strategy, StrategyRun};

use crate::config::RunConfig;
use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// EP's COO copy does not fit the memory budget.
    InfeasibleMemory,
    Mismatch,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InfeasibleMemory => "infeasible: memory",
            Status::Mismatch => "mismatch",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-strategy totals over every kernel invocation of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ImbalanceSummary {
    pub strategy: Strategy,
    pub status: Status,
    pub kernel_time: Duration,
    /// Per-invocation host work plus one-time setup.
    pub overhead_time: Duration,
    pub iterations: usize,
    pub sub_iterations: usize,
    pub invocations: usize,
    pub active_items: u64,
    pub atomic_relax_ops: u64,
    pub atomic_push_ops: u64,
    pub total_work: u64,
    /// Largest per-thread work seen in any invocation.
    pub max_work: u64,
    /// Mean over all (invocation, thread) pairs.
    pub avg_work: f64,
    /// Sum of the per-invocation stddevs of per-thread work. Pooling threads
    /// across invocations would count differences between kernels as imbalance.
    pub summed_stddev: f64,
    pub mdt: Option<usize>,
    pub split_fraction: Option<f64>,
}

impl ImbalanceSummary {
    pub fn from_run(run: &StrategyRun, status: Status) -> Self {
        let records = &run.records;
        let slots: usize = records.iter().map(MetricsRecord::threads).sum();
        let total_work = run.total_work();
        let avg_work = if slots == 0 { 0.0 } else { total_work as f64 / slots as f64 };
        Self {
            strategy: run.strategy,
            status,
            kernel_time: records.iter().map(|r| r.kernel_wall_time).sum(),
            overhead_time: run.setup_overhead + records.iter().map(|r| r.overhead_wall_time).sum::<Duration>(),
            iterations: run.iterations(),
            sub_iterations: records.iter().filter(|r| r.sub_iteration.is_some()).count(),
            invocations: records.len(),
            active_items: records.iter().map(|r| r.active_items as u64).sum(),
            atomic_relax_ops: run.total_relax_ops(),
            atomic_push_ops: run.total_push_ops(),
            total_work,
            max_work: records.iter().map(MetricsRecord::max_work).max().unwrap_or(0),
            avg_work,
            summed_stddev: run.summed_stddev_work(),
            mdt: run.mdt,
            split_fraction: run.split_fraction,
        }
    }

    pub fn infeasible(strategy: Strategy) -> Self {
        Self {
            strategy,
            status: Status::InfeasibleMemory,
            kernel_time: Duration::ZERO,
            overhead_time: Duration::ZERO,
            iterations: 0,
            sub_iterations: 0,
            invocations: 0,
            active_items: 0,
            atomic_relax_ops: 0,
            atomic_push_ops: 0,
            total_work: 0,
            max_work: 0,
            avg_work: 0.0,
            summed_stddev: 0.0,
            mdt: None,
            split_fraction: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StrategyOutcome {
    pub summary: ImbalanceSummary,
    /// `None` when the strategy could not run.
    pub run: Option<StrategyRun>,
    pub verification: Option<VerificationReport>,
}

#[derive(Debug, Clone)]
pub struct BenchmarkResult {
    pub graph: String,
    pub algo: RelaxOp,
    pub num_nodes: usize,
    pub num_edges: usize,
    pub outcomes: Vec<StrategyOutcome>,
}

impl BenchmarkResult {
    pub fn summaries(&self) -> impl Iterator<Item = &ImbalanceSummary> {
        self.outcomes.iter().map(|o| &o.summary)
    }

    pub fn all_infeasible(&self) -> bool {
        !self.outcomes.is_empty() && self.summaries().all(|s| s.status == Status::InfeasibleMemory)
    }

    pub fn outcome(&self, s: Strategy) -> Option<&StrategyOutcome> {
        self.outcomes.iter().find(|o| o.summary.strategy == s)
    }
}

pub fn oracle(g: &CsrGraph, source: u32, algo: RelaxOp) -> lbgraph::Result<Vec<Dist>> {
    match algo {
        RelaxOp::Bfs => sequential_bfs(g, source),
        RelaxOp::Sssp => dijkstra(g, source),
    }
}

/// Loads the configured graph and runs every requested strategy on it.
pub fn run_benchmark(cfg: &RunConfig) -> Result<BenchmarkResult, BenchError> {
    cfg.validate()?;
    let g = cfg.graph.load(cfg.seed)?;
    run_on_graph(cfg, &cfg.graph.name(), &g)
}

/// Runs the configured strategies on an already loaded graph.
///
/// A strategy whose COO copy exceeds the budget is recorded as infeasible and
/// the rest still run. With `verify` set, the first disagreement with the
/// oracle stops the benchmark; the error carries what was measured so far.
pub fn run_on_graph(cfg: &RunConfig, name: &str, g: &CsrGraph) -> Result<BenchmarkResult, BenchError> {
    cfg.validate()?;
    if cfg.source as usize >= g.num_nodes() {
        return Err(lbgraph::Error::NodeOutOfRange {
            node: cfg.source as u64,
            num_nodes: g.num_nodes(),
        }
        .into());
    }
    let expected = if cfg.verify { Some(oracle(g, cfg.source, cfg.algo)?) } else { None };
    let scfg = cfg.strategy_config();

    let mut result = BenchmarkResult {
        graph: name.to_string(),
        algo: cfg.algo,
        num_nodes: g.num_nodes(),
        num_edges: g.num_edges(),
        outcomes: Vec::new(),
    };
    for &s in &cfg.strategies {
        let run = match s.run(g, cfg.source, cfg.algo, &scfg) {
            Ok(run) => run,
            Err(lbgraph::Error::Capacity { .. }) => {
                result.outcomes.push(StrategyOutcome {
                    summary: ImbalanceSummary::infeasible(s),
                    run: None,
                    verification: None,
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let verification = match &expected {
            Some(want) => Some(verify(want, &run.dist)?),
            None => None,
        };
        let matched = verification.as_ref().is_none_or(|v| v.matched);
        let status = if matched { Status::Ok } else { Status::Mismatch };
        result.outcomes.push(StrategyOutcome {
            summary: ImbalanceSummary::from_run(&run, status),
            run: Some(run),
            verification: verification.clone(),
        });
        if !matched {
            let v = verification.unwrap();
            return Err(BenchError::Verification {
                strategy: s,
                mismatch_count: v.mismatch_count,
                first: v.first_mismatch,
                partial: Box::new(result),
            });
        }
    }
    Ok(result)
}
