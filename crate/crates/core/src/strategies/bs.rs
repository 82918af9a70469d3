//! Node-based distribution: each virtual thread takes worklist nodes
//! `tid, tid + T, tid + 2T, ...` and relaxes all of their out-edges.

use std::time::Instant;

use super::{check_source, KernelEvent, Relaxer, RelaxOp, Strategy, StrategyRun};
use crate::engine::{DistArray, Engine, KernelConfig, KernelLabel, KernelTag, Worklist};
use crate::error::Result;
use crate::graph::{CsrGraph, NodeId};

pub fn run_bs(g: &CsrGraph, source: NodeId, op: RelaxOp, cfg: &KernelConfig) -> Result<StrategyRun> {
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
        let threads = engine.threads_for(input.len());
        let relaxer = Relaxer {
            g,
            dist: &dist,
            op,
            out: &out,
            children: None,
        };
        let label = KernelLabel {
            iteration,
            sub_iteration: None,
            strategy: KernelTag::Bs,
            active_items: input.len(),
        };
        let mut record = engine.launch(label, threads, |ctx| {
            for &u in input.iter().skip(ctx.tid()).step_by(threads) {
                relaxer.relax(ctx, u, g.edge_range(u))?;
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

    Ok(StrategyRun {
        strategy: Strategy::Bs,
        dist: dist.into_vec(),
        records,
        setup_overhead,
        mdt: None,
        split_fraction: None,
    })
}
