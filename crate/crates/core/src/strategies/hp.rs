//! Hierarchical processing.
//!
//! Each iteration (super-iteration) is broken into sub-iterations. In
//! sub-iteration `k` every node on the sub-list relaxes its out-edges
//! `[k * MDT, (k + 1) * MDT)`; nodes with edges left over form the next
//! sub-list. A list shorter than the block size is too small to keep the
//! threads busy, so when fallback is on it is finished in one
//! workload-decomposition kernel that skips the edges already processed.

use std::time::Instant;

use super::wd::wd_pass;
use super::{check_source, KernelEvent, Relaxer, RelaxOp, Strategy, StrategyRun, Threshold};
use crate::engine::{DistArray, Engine, KernelConfig, KernelLabel, KernelTag, Worklist};
use crate::error::Result;
use crate::graph::{CsrGraph, NodeId};

pub fn run_hp(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    threshold: Threshold,
    fallback: bool,
) -> Result<StrategyRun> {
    drive(g, source, op, cfg, threshold, fallback, &mut |_: &KernelEvent<'_>| {})
}

pub(super) fn drive(
    g: &CsrGraph,
    source: NodeId,
    op: RelaxOp,
    cfg: &KernelConfig,
    threshold: Threshold,
    fallback: bool,
    observer: &mut dyn FnMut(&KernelEvent<'_>),
) -> Result<StrategyRun> {
    check_source(g, source)?;
    let mut engine = Engine::new(cfg.clone())?;
    let block = cfg.block_size;

    let setup = Instant::now();
    let mdt = threshold.resolve(g)?;
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
        let host = Instant::now();
        let mut sub: Vec<NodeId> = input.iter().copied().filter(|&u| g.outdegree(u) > 0).collect();
        let mut prep = host.elapsed();

        let mut k = 0;
        while !sub.is_empty() {
            let skip = k * mdt;
            if fallback && sub.len() < block {
                let rec = wd_pass(&mut engine, g, &relaxer, &sub, skip, KernelTag::WdFallback, iteration, Some(k), observer)?;
                if let Some(mut rec) = rec {
                    rec.overhead_wall_time += prep;
                    records.push(rec);
                }
                break;
            }

            let threads = engine.threads_for(sub.len());
            let label = KernelLabel {
                iteration,
                sub_iteration: Some(k),
                strategy: KernelTag::Hp,
                active_items: sub.len(),
            };
            let list = &sub;
            let mut record = engine.launch(label, threads, |ctx| {
                for &u in list.iter().skip(ctx.tid()).step_by(threads) {
                    let r = g.edge_range(u);
                    let lo = r.start + skip;
                    relaxer.relax(ctx, u, lo..(lo + mdt).min(r.end))?;
                }
                Ok(())
            })?;
            observer(&KernelEvent {
                record: &record,
                dist: &dist,
                active: &sub,
                output: &out,
                partition: None,
            });

            let host = Instant::now();
            let done = skip + mdt;
            sub.retain(|&u| g.outdegree(u) > done);
            record.overhead_wall_time = prep + host.elapsed();
            prep = Default::default();
            records.push(record);
            k += 1;
        }

        let host = Instant::now();
        input = out.drain();
        if let Some(last) = records.last_mut() {
            last.overhead_wall_time += host.elapsed();
        }
        iteration += 1;
    }

    Ok(StrategyRun {
        strategy: Strategy::Hp,
        dist: dist.into_vec(),
        records,
        setup_overhead,
        mdt: Some(mdt),
        split_fraction: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_fallback(g: &CsrGraph, mdt: usize) -> StrategyRun {
        run_hp(g, 0, RelaxOp::Bfs, &KernelConfig::replay(), Threshold::Fixed(mdt), false).unwrap()
    }

    #[test]
    fn hundred_edges_mdt_five() {
        let dst: Vec<u32> = (1..=100).collect();
        let g = CsrGraph::from_edges(101, &[0; 100], &dst, None).unwrap();
        let run = no_fallback(&g, 5);
        let first: Vec<_> = run.records.iter().filter(|r| r.iteration == 0).collect();
        assert_eq!(first.len(), 20);
        assert_eq!(first.last().unwrap().sub_iteration, Some(19));
        assert!(first.iter().all(|r| r.total_work() == 5));
    }

    #[test]
    fn degrees_five_and_seven_mdt_three() {
        // 0 -> {1, 2}; node 1 has 5 out-edges and node 2 has 7.
        let mut src = vec![0, 0];
        let mut dst = vec![1, 2];
        let mut leaf = 3;
        for (u, deg) in [(1, 5), (2, 7)] {
            for _ in 0..deg {
                src.push(u);
                dst.push(leaf);
                leaf += 1;
            }
        }
        let g = CsrGraph::from_edges(leaf as usize, &src, &dst, None).unwrap();
        let run = no_fallback(&g, 3);
        let second: Vec<_> = run.records.iter().filter(|r| r.iteration == 1).collect();
        assert_eq!(second.len(), 3);
        let active: Vec<_> = second.iter().map(|r| r.active_items).collect();
        assert_eq!(active, vec![2, 2, 1]);
        assert!(run.dist[3..].iter().all(|&d| d == 2));
    }

    #[test]
    fn small_lists_fall_back() {
        let g = CsrGraph::from_edges(3, &[0, 1], &[1, 2], Some(&[2, 2])).unwrap();
        let run = run_hp(&g, 0, RelaxOp::Sssp, &KernelConfig::replay(), Threshold::Fixed(1), true).unwrap();
        assert_eq!(run.dist, vec![0, 2, 4]);
        assert!(run.records.iter().all(|r| r.strategy == KernelTag::WdFallback));
    }

    #[test]
    fn fallback_after_first_window() {
        // A super-list of 1100 nodes, one of which has 11 out-edges. With
        // MDT 4 the first window runs as HP and the leftover single node
        // drops under the block size.
        let mut src: Vec<u32> = (1..=1100).collect();
        let mut dst: Vec<u32> = vec![0; 1100];
        src.splice(0..0, vec![0; 1100]);
        dst.splice(0..0, (1..=1100).collect::<Vec<_>>());
        for i in 0..10 {
            src.push(1);
            dst.push(1101 + i);
        }
        let g = CsrGraph::from_edges(1111, &src, &dst, None).unwrap();
        let run = run_hp(&g, 0, RelaxOp::Bfs, &KernelConfig::replay(), Threshold::Fixed(4), true).unwrap();
        let it1: Vec<_> = run.records.iter().filter(|r| r.iteration == 1).collect();
        assert_eq!(it1[0].strategy, KernelTag::Hp);
        assert_eq!(it1[1].strategy, KernelTag::WdFallback);
        assert_eq!(it1[1].sub_iteration, Some(1));
        assert_eq!(it1[1].total_work(), 7);
        assert!(run.dist[1101..].iter().all(|&d| d == 2));
    }
}
