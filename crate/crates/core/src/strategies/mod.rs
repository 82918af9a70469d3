//! The five task-distribution strategies for BFS and SSSP.
//!
//! | tag | unit handed to a thread | extra state |
//! |-----|-------------------------|-------------|
//! | BS  | whole worklist nodes, round-robin | none |
//! | EP  | single edges, round-robin | COO copy of the graph, condensed edge worklist |
//! | WD  | contiguous runs of `ceil(active edges / T)` edges | scan + offset table per iteration |
//! | NS  | whole nodes of a graph whose degrees are capped at MDT | split graph, child bookkeeping |
//! | HP  | at most MDT edges per node per sub-iteration | sub-worklists, WD for small lists |
//!
//! All drivers are data-driven: only nodes whose label improved in the
//! previous kernel are active in the next one, and the loop stops when a
//! kernel produces an empty worklist. Labels move only through atomic
//! minimum, so every strategy converges to the same fixpoint.

mod bs;
mod ep;
mod hp;
mod ns;
mod wd;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::time::Duration;

pub use bs::run_bs;
pub use ep::run_ep;
pub use hp::run_hp;
pub use ns::{run_ns, split_graph, SplitGraph};
pub use wd::{find_offsets, run_wd, OffsetTable, ThreadOffset, WdPartition};

use crate::engine::{Dist, DistArray, KernelConfig, KernelTag, MetricsRecord, ThreadCtx, Worklist, INF};
use crate::error::{Error, Result};
use crate::graph::{build_histogram, compute_mdt, CooBudget, CsrGraph, NodeId, Weight, DEFAULT_BINS};

/// How a relaxation turns a source label into a candidate for the destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelaxOp {
    /// Levels: every edge costs one.
    Bfs,
    /// Distances: every edge costs its weight.
    Sssp,
}

impl RelaxOp {
    #[inline]
    pub fn candidate(self, source_value: Dist, weight: Weight) -> Dist {
        let step = match self {
            RelaxOp::Bfs => 1,
            RelaxOp::Sssp => weight as Dist,
        };
        source_value.saturating_add(step)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RelaxOp::Bfs => "bfs",
            RelaxOp::Sssp => "sssp",
        }
    }
}

impl fmt::Display for RelaxOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelaxOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bfs" => Ok(RelaxOp::Bfs),
            "sssp" => Ok(RelaxOp::Sssp),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Bs,
    Ep,
    Wd,
    Ns,
    Hp,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [Strategy::Bs, Strategy::Ep, Strategy::Wd, Strategy::Ns, Strategy::Hp];

    pub fn tag(self) -> KernelTag {
        match self {
            Strategy::Bs => KernelTag::Bs,
            Strategy::Ep => KernelTag::Ep,
            Strategy::Wd => KernelTag::Wd,
            Strategy::Ns => KernelTag::Ns,
            Strategy::Hp => KernelTag::Hp,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.tag().as_str()
    }

    pub fn run(self, g: &CsrGraph, source: NodeId, op: RelaxOp, cfg: &StrategyConfig) -> Result<StrategyRun> {
        self.run_observed(g, source, op, cfg, &mut |_: &KernelEvent<'_>| {})
    }

    /// Like [`Strategy::run`], calling `observer` after every kernel.
    pub fn run_observed(
        self,
        g: &CsrGraph,
        source: NodeId,
        op: RelaxOp,
        cfg: &StrategyConfig,
        observer: &mut dyn FnMut(&KernelEvent<'_>),
    ) -> Result<StrategyRun> {
        match self {
            Strategy::Bs => bs::drive(g, source, op, &cfg.kernel, observer),
            Strategy::Ep => ep::drive(g, source, op, &cfg.kernel, cfg.chunked, cfg.coo_budget, observer),
            Strategy::Wd => wd::drive(g, source, op, &cfg.kernel, observer),
            Strategy::Ns => ns::drive(g, source, op, &cfg.kernel, cfg.threshold, observer),
            Strategy::Hp => hp::drive(g, source, op, &cfg.kernel, cfg.threshold, cfg.hp_fallback, observer),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bs" => Ok(Strategy::Bs),
            "ep" => Ok(Strategy::Ep),
            "wd" => Ok(Strategy::Wd),
            "ns" => Ok(Strategy::Ns),
            "hp" => Ok(Strategy::Hp),
            other => Err(Error::Config(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Where the maximum-degree threshold used by NS and HP comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// Histogram over this many bins; see [`compute_mdt`].
    Histogram { bins: usize },
    Fixed(usize),
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::Histogram { bins: DEFAULT_BINS }
    }
}

impl Threshold {
    pub fn resolve(self, g: &CsrGraph) -> Result<usize> {
        match self {
            Threshold::Histogram { bins } => Ok(compute_mdt(&build_histogram(g, bins)?)),
            Threshold::Fixed(0) => Err(Error::Config("MDT must be at least 1".into())),
            Threshold::Fixed(m) => Ok(m),
        }
    }
}

/// Everything a strategy run needs besides the graph, source and operator.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyConfig {
    pub kernel: KernelConfig,
    pub threshold: Threshold,
    /// EP pushes all out-edges of a relaxed node with one reservation.
    pub chunked: bool,
    /// HP hands lists shorter than the block size to workload decomposition.
    pub hp_fallback: bool,
    pub coo_budget: CooBudget,
}

impl Default for StrategyConfig {
    fn default() -> Self {
        Self {
            kernel: KernelConfig::default(),
            threshold: Threshold::default(),
            chunked: true,
            hp_fallback: true,
            coo_budget: CooBudget::default(),
        }
    }
}

/// Result of one strategy run.
#[derive(Debug, Clone)]
pub struct StrategyRun {
    pub strategy: Strategy,
    /// Final labels indexed by original node id.
    pub dist: Vec<Dist>,
    pub records: Vec<MetricsRecord>,
    /// One-time preparation: COO conversion, histogram, splitting, allocation.
    pub setup_overhead: Duration,
    pub mdt: Option<usize>,
    /// Fraction of original nodes that were split (NS only).
    pub split_fraction: Option<f64>,
}

impl StrategyRun {
    pub fn iterations(&self) -> usize {
        self.records.iter().map(|r| r.iteration + 1).max().unwrap_or(0)
    }

    /// Sum over invocations of the per-invocation standard deviation of per-thread work.
    pub fn summed_stddev_work(&self) -> f64 {
        self.records.iter().map(MetricsRecord::stddev_work).sum()
    }

    pub fn total_push_ops(&self) -> u64 {
        self.records.iter().map(|r| r.atomic_push_ops).sum()
    }

    pub fn total_relax_ops(&self) -> u64 {
        self.records.iter().map(|r| r.atomic_relax_ops).sum()
    }

    pub fn total_work(&self) -> u64 {
        self.records.iter().map(MetricsRecord::total_work).sum()
    }
}

/// What an observer sees after each kernel.
pub struct KernelEvent<'a> {
    pub record: &'a MetricsRecord,
    /// Labels after the kernel. For NS this covers split nodes too; the first
    /// `g.num_nodes()` entries are the original nodes.
    pub dist: &'a DistArray,
    /// Worklist the kernel consumed: node ids, or edge indices for EP.
    pub active: &'a [u32],
    /// What the kernel appended, before the driver drains or condenses it.
    pub output: &'a Worklist,
    /// Edge partition, for kernels that use workload decomposition.
    pub partition: Option<&'a WdPartition>,
}

pub fn run_all(g: &CsrGraph, source: NodeId, op: RelaxOp, cfg: &StrategyConfig) -> Vec<(Strategy, Result<StrategyRun>)> {
    Strategy::ALL.iter().map(|&s| (s, s.run(g, source, op, cfg))).collect()
}

fn check_source(g: &CsrGraph, source: NodeId) -> Result<()> {
    if source as usize >= g.num_nodes() {
        return Err(Error::NodeOutOfRange {
            node: source as u64,
            num_nodes: g.num_nodes(),
        });
    }
    Ok(())
}

/// Shared inner loop: relax a run of one node's out-edges and push every
/// destination that improved. With `children`, improvements are reflected to
/// the destination's split children.
struct Relaxer<'a> {
    g: &'a CsrGraph,
    dist: &'a DistArray,
    op: RelaxOp,
    out: &'a Worklist,
    children: Option<&'a SplitGraph>,
}

impl Relaxer<'_> {
    #[inline]
    fn relax(&self, ctx: &mut ThreadCtx, u: NodeId, edges: Range<usize>) -> Result<()> {
        ctx.add_work(edges.len() as u64);
        let du = self.dist.get(u);
        if du == INF {
            return Ok(());
        }
        for e in edges {
            let v = self.g.target(e);
            let cand = self.op.candidate(du, self.g.weight(e));
            if cand < self.dist.get(v) && ctx.relax_min(self.dist, v, cand)? {
                ctx.push_unique(self.out, v)?;
                if let Some(split) = self.children {
                    for c in split.children(v) {
                        if ctx.relax_min(self.dist, c, cand)? {
                            ctx.push_unique(self.out, c)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
