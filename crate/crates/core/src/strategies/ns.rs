//! Node splitting.
//!
//! Before the first kernel every node with more than MDT out-edges is cut
//! into `ceil(deg / MDT)` nodes: the parent keeps its first MDT edges and
//! each child takes the next MDT in adjacency order. Children get fresh ids
//! after the original nodes and no incoming edges; instead, whenever a
//! parent's label drops, the relaxing thread copies the new value to every
//! child and pushes them. The split graph is then processed node-based.

use std::ops::Range;
use std::time::Instant;

use super::{check_source, KernelEvent, Relaxer, RelaxOp, Strategy, StrategyRun, Threshold};
use crate::engine::{DistArray, Engine, KernelConfig, KernelLabel, KernelTag, Worklist};
use crate::error::{Error, Result};
use crate::graph::{CsrGraph, NodeId};

/// A graph whose out-degrees are capped at `mdt`, plus the parent/child map.
#[derive(Debug, Clone)]
pub struct SplitGraph {
    pub graph: CsrGraph,
    pub num_original: usize,
    /// `parent_of[c - num_original]` is the original node child `c` came from.
    pub parent_of: Vec<NodeId>,
    /// Children of original node `v` are `num_original + child_offsets[v]..num_original + child_offsets[v + 1]`.
    child_offsets: Vec<usize>,
    pub mdt: usize,
}

impl SplitGraph {
    /// Child ids of `v`; empty for unsplit nodes and for children themselves.
    pub fn children(&self, v: NodeId) -> Range<NodeId> {
        let v = v as usize;
        if v >= self.num_original {
            return 0..0;
        }
        let base = self.num_original;
        (base + self.child_offsets[v]) as NodeId..(base + self.child_offsets[v + 1]) as NodeId
    }

    /// Original node a split-graph node stands for.
    pub fn parent(&self, v: NodeId) -> NodeId {
        match (v as usize).checked_sub(self.num_original) {
            Some(i) => self.parent_of[i],
            None => v,
        }
    }

    pub fn num_children(&self) -> usize {
        self.parent_of.len()
    }

    /// Number of original nodes that were split.
    pub fn split_nodes(&self) -> usize {
        self.child_offsets.windows(2).filter(|w| w[1] > w[0]).count()
    }

    pub fn split_fraction(&self) -> f64 {
        if self.num_original == 0 {
            return 0.0;
        }
        self.split_nodes() as f64 / self.num_original as f64
    }
}

pub fn split_graph(g: &CsrGraph, mdt: usize) -> Result<SplitGraph> {
    if mdt == 0 {
        return Err(Error::Config("MDT must be at least 1".into()));
    }
    let n = g.num_nodes();
    let mut child_offsets = Vec::with_capacity(n + 1);
    child_offsets.push(0usize);
    for d in g.outdegrees() {
        let extra = d.div_ceil(mdt).saturating_sub(1);
        child_offsets.push(child_offsets.last().unwrap() + extra);
    }
    let num_children = child_offsets[n];
    let total = n + num_children;
    if total > NodeId::MAX as usize {
        return Err(Error::InvalidGraph(format!("splitting yields {total} nodes, more than 32-bit ids allow")));
    }

    // Chunk `j` of node `v` covers edges [j * mdt, (j + 1) * mdt) of v's list.
    let chunk = |v: usize, j: usize| {
        let r = g.edge_range(v as NodeId);
        let lo = r.start + j * mdt;
        lo..(lo + mdt).min(r.end)
    };
    let mut runs = Vec::with_capacity(total);
    let mut parent_of = Vec::with_capacity(num_children);
    for v in 0..n {
        let r = g.edge_range(v as NodeId);
        runs.push(r.start..(r.start + mdt).min(r.end));
    }
    for v in 0..n {
        for j in 1..=child_offsets[v + 1] - child_offsets[v] {
            runs.push(chunk(v, j));
            parent_of.push(v as NodeId);
        }
    }

    let mut row_offsets = Vec::with_capacity(total + 1);
    row_offsets.push(0);
    let mut col_indices = Vec::with_capacity(g.num_edges());
    let mut weights = g.weights().map(|_| Vec::with_capacity(g.num_edges()));
    for r in &runs {
        col_indices.extend_from_slice(&g.col_indices()[r.clone()]);
        if let (Some(w), Some(src)) = (weights.as_mut(), g.weights()) {
            w.extend_from_slice(&src[r.clone()]);
        }
        row_offsets.push(col_indices.len());
    }

    Ok(SplitGraph {
        graph: CsrGraph::new(row_offsets, col_indices, weights)?,
        num_original: n,
        parent_of,
        child_offsets,
        mdt,
    })
}

pub fn run_ns(g: &CsrGraph, source: NodeId, op: RelaxOp, cfg: &KernelConfig, threshold: Threshold) -> Result<StrategyRun> {
    drive(g, source, op, cfg, threshold, &mut |_: &KernelEvent<'_>| {})
}

pub(super) fn drive(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    threshold: Threshold,
    observer: &mut dyn FnMut(&KernelEvent<'_>),
) -> Result<StrategyRun> {
    check_source(g, source)?;
    let mut engine = Engine::new(cfg.clone())?;

    let setup = Instant::now();
    let mdt = threshold.resolve(g)?;
    let split = split_graph(g, mdt)?;
    let sg = &split.graph;
    let total = sg.num_nodes();
    let dist = DistArray::new(total);
    let mut out = Worklist::with_dedup(total, total);
    let mut input = vec![source];
    dist.relax_min(source, 0)?;
    for c in split.children(source) {
        dist.relax_min(c, 0)?;
        input.push(c);
    }
    let setup_overhead = setup.elapsed();

    let mut records = Vec::new();
    let mut iteration = 0;
    while !input.is_empty() {
        let threads = engine.threads_for(input.len());
        let relaxer = Relaxer {
            g: sg,
            dist: &dist,
            op,
            out: &out,
            children: Some(&split),
        };
        let label = KernelLabel {
            iteration,
            sub_iteration: None,
            strategy: KernelTag::Ns,
            active_items: input.len(),
        };
        let mut record = engine.launch(label, threads, |ctx| {
            for &u in input.iter().skip(ctx.tid()).step_by(threads) {
                relaxer.relax(ctx, u, sg.edge_range(u))?;
            }
            Ok(())
        })?;
        observer(&KernelEvent {
            record: &record,
            dist: &dist,
            active: &input,
            output: &out,
            partition: None,
        });

        let host = Instant::now();
        input = out.drain();
        record.overhead_wall_time = host.elapsed();
        records.push(record);
        iteration += 1;
    }

    let mut dist = dist.into_vec();
    dist.truncate(g.num_nodes());
    Ok(StrategyRun {
        strategy: Strategy::Ns,
        dist,
        records,
        setup_overhead,
        mdt: Some(mdt),
        split_fraction: Some(split.split_fraction()),
    })
}
