//! Edge-based distribution over a COO copy of the graph.
//!
//! Worklist items are edge indices; because the COO arrays are sorted by
//! source, edge `i` is also edge `i` of the CSR adjacency and a node's
//! out-edges form a contiguous index run. When a destination improves, its
//! whole out-edge run is appended: one reservation when chunked, one per edge
//! otherwise. Several threads can append the same run in one kernel, so the
//! worklist is condensed before it is consumed.

use std::time::Instant;

use super::{check_source, KernelEvent, RelaxOp, Strategy, StrategyRun};
use crate::engine::{condense, DistArray, Engine, KernelConfig, KernelLabel, KernelTag, Worklist, INF};
use crate::error::{Error, Result};
use crate::graph::{csr_to_coo, CooBudget, CsrGraph, NodeId};

pub fn run_ep(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    chunked: bool,
    budget: CooBudget,
) -> Result<StrategyRun> {
    drive(g, source, op, cfg, chunked, budget, &mut |_: &KernelEvent<'_>| {})
}

fn edge_run(g: &CsrGraph, v: NodeId) -> std::ops::Range<u32> {
    let r = g.edge_range(v);
    r.start as u32..r.end as u32
}

pub(super) fn drive(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    chunked: bool,
    budget: CooBudget,
    observer: &mut dyn FnMut(&KernelEvent<'_>),
) -> Result<StrategyRun> {
    check_source(g, source)?;
    if g.num_edges() > u32::MAX as usize {
        return Err(Error::InvalidGraph("edge worklist needs 32-bit edge indices".into()));
    }
    let mut engine = Engine::new(cfg.clone())?;

    let setup = Instant::now();
    let coo = csr_to_coo(g, budget)?;
    let dist = DistArray::new(g.num_nodes());
    dist.relax_min(source, 0)?;
    let mut input: Vec<u32> = edge_run(g, source).collect();
    let mut out = Worklist::new(g.num_edges().max(1));
    let setup_overhead = setup.elapsed();

    let mut records = Vec::new();
    let mut iteration = 0;
    while !input.is_empty() {
        let host = Instant::now();
        // Every relaxed edge appends at most its destination's out-degree.
        let bound: usize = input.iter().map(|&e| g.outdegree(coo.dst[e as usize])).sum();
        out.reserve_capacity(bound);
        let prep = host.elapsed();

        let threads = engine.threads_for(input.len());
        let label = KernelLabel {
            iteration,
            sub_iteration: None,
            strategy: KernelTag::Ep,
            active_items: input.len(),
        };
        let (coo, dist, out_ref) = (&coo, &dist, &out);
        let mut record = engine.launch(label, threads, |ctx| {
            for &e in input.iter().skip(ctx.tid()).step_by(threads) {
                let e = e as usize;
                ctx.add_work(1);
                let (s, d) = (coo.src[e], coo.dst[e]);
                let ds = dist.get(s);
                if ds == INF {
                    continue;
                }
                let cand = op.candidate(ds, coo.weight(e));
                if cand < dist.get(d) && ctx.relax_min(dist, d, cand)? {
                    let run = edge_run(g, d);
                    if chunked {
                        ctx.push_range(out_ref, run)?;
                    } else {
                        for edge in run {
                            ctx.push_chunk(out_ref, &[edge])?;
                        }
                    }
                }
            }
            Ok(())
        })?;
        observer(&KernelEvent {
            record: &record,
            dist,
            active: &input,
            output: &out,
            partition: None,
        });

        let host = Instant::now();
        input = condense(&out.drain());
        record.overhead_wall_time = prep + host.elapsed();
        records.push(record);
        iteration += 1;
    }

    Ok(StrategyRun {
        strategy: Strategy::Ep,
        dist: dist.into_vec(),
        records,
        setup_overhead,
        mdt: None,
        split_fraction: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> CsrGraph {
        CsrGraph::from_edges(3, &[0, 1, 0], &[1, 2, 2], Some(&[1, 1, 5])).unwrap()
    }

    #[test]
    fn triangle_sssp() {
        let run = run_ep(&triangle(), 0, RelaxOp::Sssp, &KernelConfig::replay(), true, CooBudget::default()).unwrap();
        assert_eq!(run.dist, vec![0, 1, 2]);
    }

    #[test]
    fn chunking_saves_push_atomics() {
        // 0 -> 1, and 1 has three out-edges.
        let g = CsrGraph::from_edges(5, &[0, 1, 1, 1], &[1, 2, 3, 4], None).unwrap();
        let cfg = KernelConfig::replay();
        let chunked = run_ep(&g, 0, RelaxOp::Bfs, &cfg, true, CooBudget::default()).unwrap();
        let plain = run_ep(&g, 0, RelaxOp::Bfs, &cfg, false, CooBudget::default()).unwrap();
        assert_eq!(chunked.dist, plain.dist);
        // Relaxing node 1 pushes its 3 edges: 1 reservation vs 3.
        assert_eq!(chunked.total_push_ops(), 1);
        assert_eq!(plain.total_push_ops(), 3);
    }

    #[test]
    fn over_budget_is_a_capacity_error() {
        let err = run_ep(&triangle(), 0, RelaxOp::Sssp, &KernelConfig::replay(), true, CooBudget { cells: 8 }).unwrap_err();
        assert!(matches!(err, Error::Capacity { required: 9, available: 8 }));
    }

    #[test]
    fn per_thread_work_is_balanced() {
        // Source with 10 out-edges spread over 4 threads: 3,3,2,2.
        let g = CsrGraph::from_edges(11, &[0; 10], &(1..=10).collect::<Vec<_>>(), None).unwrap();
        let run = run_ep(&g, 0, RelaxOp::Bfs, &KernelConfig::replay().with_threads(4), true, CooBudget::default()).unwrap();
        assert_eq!(run.records[0].per_thread_work, vec![3, 3, 2, 2]);
    }
}
