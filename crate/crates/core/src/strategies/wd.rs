//! Workload decomposition.
//!
//! The worklist still holds nodes, but the edges of the active nodes are laid
//! out in worklist order as one global sequence and cut into contiguous runs
//! of `edges_per_thread = ceil(total / T)` edges. Thread `t` starts at global
//! edge `t * edges_per_thread`; an inclusive scan of the active out-degrees
//! and a binary search turn that position into a (worklist slot, edge within
//! node) pair. A thread whose run crosses a node boundary walks on into the
//! next worklist node.

use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;

use super::{check_source, KernelEvent, Relaxer, RelaxOp, Strategy, StrategyRun};
use crate::engine::{inclusive_scan, DistArray, Engine, KernelConfig, KernelLabel, KernelTag, MetricsRecord, Worklist};
use crate::error::{Error, Result};
use crate::graph::{CsrGraph, NodeId};

/// Starting point of one thread: worklist slot and edge offset inside that node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreadOffset {
    pub node_offset: usize,
    pub edge_offset: usize,
}

/// One entry per virtual thread; `None` marks a thread with no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffsetTable {
    pub entries: Vec<Option<ThreadOffset>>,
}

/// Locates the first edge of every thread's run. `prefix` must be the
/// inclusive scan of the worklist nodes' (remaining) out-degrees.
pub fn find_offsets(wl: &[NodeId], prefix: &[u64], edges_per_thread: usize, threads: usize) -> Result<OffsetTable> {
    if prefix.len() != wl.len() {
        return Err(Error::Internal(format!(
            "prefix has {} entries for a worklist of {}",
            prefix.len(),
            wl.len()
        )));
    }
    if edges_per_thread == 0 {
        return Err(Error::Config("edges_per_thread must be at least 1".into()));
    }
    let total = prefix.last().copied().unwrap_or(0);
    let entries = (0..threads)
        .into_par_iter()
        .with_min_len(1024)
        .map(|t| {
            let first = t as u128 * edges_per_thread as u128;
            if first >= total as u128 {
                return None;
            }
            let first = first as u64;
            let slot = prefix.partition_point(|&p| p <= first);
            let before = if slot == 0 { 0 } else { prefix[slot - 1] };
            Some(ThreadOffset {
                node_offset: slot,
                edge_offset: (first - before) as usize,
            })
        })
        .collect();
    Ok(OffsetTable { entries })
}

/// Edge-to-thread assignment for one workload-decomposition kernel.
#[derive(Debug, Clone)]
pub struct WdPartition {
    /// Inclusive scan of per-slot edge counts.
    pub prefix: Vec<u64>,
    pub edges_per_thread: usize,
    pub threads: usize,
    pub offsets: OffsetTable,
}

impl WdPartition {
    /// Plans a kernel over worklist slots with the given edge counts.
    pub fn plan(wl: &[NodeId], lens: &[u64], threads: usize) -> Result<Self> {
        let prefix = inclusive_scan(lens)?;
        let total = prefix.last().copied().unwrap_or(0);
        let edges_per_thread = (total.div_ceil(threads as u64) as usize).max(1);
        let offsets = find_offsets(wl, &prefix, edges_per_thread, threads)?;
        Ok(Self {
            prefix,
            edges_per_thread,
            threads,
            offsets,
        })
    }

    pub fn total(&self) -> u64 {
        self.prefix.last().copied().unwrap_or(0)
    }

    pub fn slot_len(&self, slot: usize) -> u64 {
        self.prefix[slot] - if slot == 0 { 0 } else { self.prefix[slot - 1] }
    }

    /// Edges assigned to thread `t`.
    pub fn load(&self, t: usize) -> u64 {
        let first = t as u64 * self.edges_per_thread as u64;
        self.total().saturating_sub(first).min(self.edges_per_thread as u64)
    }

    /// `(worklist slot, edge offsets within that node)` runs processed by thread `t`.
    pub fn segments(&self, t: usize) -> Segments<'_> {
        let (node_offset, edge_offset) = match self.offsets.entries[t] {
            Some(o) => (o.node_offset, o.edge_offset as u64),
            None => (0, 0),
        };
        Segments {
            part: self,
            node_offset,
            edge_offset,
            remaining: self.load(t),
        }
    }
}

pub struct Segments<'a> {
    part: &'a WdPartition,
    node_offset: usize,
    edge_offset: u64,
    remaining: u64,
}

impl Iterator for Segments<'_> {
    type Item = (usize, Range<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        while self.remaining > 0 {
            let len = self.part.slot_len(self.node_offset);
            if self.edge_offset >= len {
                // Run continues in the next worklist node.
                self.node_offset += 1;
                self.edge_offset = 0;
                continue;
            }
            let take = self.remaining.min(len - self.edge_offset);
            let run = self.edge_offset as usize..(self.edge_offset + take) as usize;
            self.edge_offset += take;
            self.remaining -= take;
            return Some((self.node_offset, run));
        }
        None
    }
}

/// One workload-decomposition kernel over `nodes`, skipping the first `skip`
/// out-edges of each. Returns `None` when the nodes have no edges left.
#[allow(clippy::too_many_arguments)]
pub(super) fn wd_pass(
    engine: &mut Engine,
    g: &CsrGraph,
    relaxer: &Relaxer<'_>,
    nodes: &[NodeId],
    skip: usize,
    tag: KernelTag,
    iteration: usize,
    sub_iteration: Option<usize>,
    observer: &mut dyn FnMut(&KernelEvent<'_>),
) -> Result<Option<MetricsRecord>> {
    let host = Instant::now();
    let lens: Vec<u64> = nodes.iter().map(|&u| g.outdegree(u).saturating_sub(skip) as u64).collect();
    let total: u64 = lens.iter().sum();
    if total == 0 {
        return Ok(None);
    }
    let threads = engine.threads_for(total as usize);
    let partition = WdPartition::plan(nodes, &lens, threads)?;
    let prep = host.elapsed();

    let label = KernelLabel {
        iteration,
        sub_iteration,
        strategy: tag,
        active_items: nodes.len(),
    };
    let part = &partition;
    let mut record = engine.launch(label, threads, |ctx| {
        for (slot, run) in part.segments(ctx.tid()) {
            let u = nodes[slot];
            let base = g.row_offsets()[u as usize] + skip;
            relaxer.relax(ctx, u, base + run.start..base + run.end)?;
        }
        Ok(())
    })?;
    record.overhead_wall_time = prep;
    observer(&KernelEvent {
        record: &record,
        dist: relaxer.dist,
        active: nodes,
        output: relaxer.out,
        partition: Some(&partition),
    });
    Ok(Some(record))
}

pub fn run_wd(g: &CsrGraph, source: NodeId, op: RelaxOp, cfg: &KernelConfig) -> Result<StrategyRun> {
    drive(g, source, op, cfg, &mut |_: &KernelEvent<'_>| {})
}

pub(super) fn drive(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    observer: &mut dyn FnMut(&KernelEvent<'_>),
) -> Result<StrategyRun> {
    check_source(g, source)?;
    let mut engine = Engine::new(cfg.clone())?;

    let setup = Instant::now();
    let n = g.num_nodes();
    let dist = DistArray::new(n);
    dist.relax_min(source, 0)?;
    let mut out = Worklist::with_dedup(n, n);
    let mut input = vec![source];
    let setup_overhead = setup.elapsed();

    let mut records = Vec::new();
    let mut iteration = 0;
    while !input.is_empty() {
        let relaxer = Relaxer {
            g,
            dist: &dist,
            op,
            out: &out,
            children: None,
        };
        let record = wd_pass(&mut engine, g, &relaxer, &input, 0, KernelTag::Wd, iteration, None, observer)?;
        let host = Instant::now();
        input = out.drain();
        if let Some(mut record) = record {
            record.overhead_wall_time += host.elapsed();
            records.push(record);
        }
        iteration += 1;
    }

    Ok(StrategyRun {
        strategy: Strategy::Wd,
        dist: dist.into_vec(),
        records,
        setup_overhead,
        mdt: None,
        split_fraction: None,
    })
}
