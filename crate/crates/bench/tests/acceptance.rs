//! Acceptance suite. Runs every criterion, prints one `[PASS]`/`[FAIL]` line
//! each, and exits non-zero if any of them fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use lbgraph::engine::{condense, inclusive_scan, KernelConfig, KernelTag};
use lbgraph::graph::{generate_er, generate_rmat, CooBudget, CsrGraph, DegreeHistogram, RmatParams};
use lbgraph::oracles::dijkstra;
use lbgraph::strategies::{split_graph, KernelEvent, RelaxOp, Strategy, StrategyConfig, Threshold};
use lbgraph_bench::{oracle, report_rows, run_on_graph, GraphSource, RunConfig, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rmat(scale: u32, seed: u64) -> CsrGraph {
    generate_rmat(scale, 8, RmatParams::default(), seed).unwrap()
}

fn path(n: u32) -> CsrGraph {
    let src: Vec<u32> = (0..n - 1).collect();
    let dst: Vec<u32> = (1..n).collect();
    let wt: Vec<u32> = (0..n - 1).map(|i| 1 + i % 3).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

fn star(n: u32) -> CsrGraph {
    let (mut src, mut dst) = (Vec::new(), Vec::new());
    for v in 1..n {
        src.extend([0, v]);
        dst.extend([v, 0]);
    }
    let wt: Vec<u32> = (0..src.len() as u32).map(|i| 1 + i % 7).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

fn ring(n: u32) -> CsrGraph {
    let src: Vec<u32> = (0..n).collect();
    let dst: Vec<u32> = (0..n).map(|v| (v + 1) % n).collect();
    let wt: Vec<u32> = (0..n).map(|i| 1 + i % 5).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

/// Source `0` fans out to `a` and `b`, which have `da` and `db` fresh leaves.
fn two_hubs(da: u32, db: u32) -> CsrGraph {
    let (a, b) = (1, 2);
    let (mut src, mut dst) = (vec![0, 0], vec![a, b]);
    let mut leaf = 3;
    for (u, d) in [(a, da), (b, db)] {
        for _ in 0..d {
            src.push(u);
            dst.push(leaf);
            leaf += 1;
        }
    }
    CsrGraph::from_edges(leaf as usize, &src, &dst, None).unwrap()
}

fn suite_graphs() -> Vec<(String, CsrGraph)> {
    vec![
        ("rmat14".into(), rmat(14, 1)),
        ("rmat16".into(), rmat(16, 1)),
        ("er14".into(), generate_er(1 << 14, 4 << 14, 1).unwrap()),
        ("path".into(), path(1000)),
        ("star".into(), star(2000)),
        ("ring".into(), ring(1000)),
    ]
}

fn strategy_cfg(kernel: KernelConfig) -> StrategyConfig {
    StrategyConfig {
        kernel,
        ..StrategyConfig::default()
    }
}

fn c1_oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut graphs = suite_graphs();
    for seed in 0..20u64 {
        let g = if seed % 2 == 0 {
            generate_er(1 << 10, 1 << 12, seed).unwrap()
        } else {
            generate_rmat(10, 4, RmatParams::default(), seed).unwrap()
        };
        graphs.push((format!("random-{seed}"), g));
    }
    let cfg = StrategyConfig::default();
    let (mut runs, mut mismatches) = (0, 0);
    let mut first_bad = None;
    for (name, g) in &graphs {
        let n = g.num_nodes() as u32;
        let hub = (0..n).max_by_key(|&v| g.outdegree(v)).unwrap();
        let mut sources = vec![0, n / 2, hub];
        sources.dedup();
        for &source in &sources {
            for op in [RelaxOp::Bfs, RelaxOp::Sssp] {
                let want = oracle(g, source, op).unwrap();
                for s in Strategy::ALL {
                    let run = s.run(g, source, op, &cfg).map_err(|e| format!("{name} {s}: {e}"))?;
                    runs += 1;
                    let bad = run.dist.iter().zip(&want).filter(|(a, b)| a != b).count();
                    if bad > 0 && first_bad.is_none() {
                        first_bad = Some(format!("{name} {s} {op} from {source}"));
                    }
                    mismatches += bad;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(mismatches == 0, || format!("{mismatches} mismatching cells, first in {}", first_bad.unwrap()))?;
    ensure(secs < 300.0, || format!("took {secs:.0} s"))?;
    Ok(format!("0 mismatches over {runs} runs on {} graphs ({secs:.1} s)", graphs.len()))
}

fn c2_confluence() -> Check {
    let g = rmat(12, 3);
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let workers = [1, 4, max];
    let mut kernels: Vec<KernelConfig> = workers.iter().map(|&w| KernelConfig::default().with_workers(w)).collect();
    kernels.push(KernelConfig::replay());
    for seed in 0..20u64 {
        kernels.push(KernelConfig::default().with_workers(workers[seed as usize % 3]).with_shuffle(seed));
    }
    let mut runs = 0;
    for op in [RelaxOp::Bfs, RelaxOp::Sssp] {
        for s in Strategy::ALL {
            let mut reference: Option<Vec<u64>> = None;
            for k in &kernels {
                let dist = s.run(&g, 0, op, &strategy_cfg(k.clone())).map_err(|e| e.to_string())?.dist;
                runs += 1;
                match &reference {
                    None => reference = Some(dist),
                    Some(r) => ensure(*r == dist, || format!("{s} {op} differs under {k:?}"))?,
                }
            }
        }
    }
    Ok(format!("{runs} runs, workers {{1, 4, {max}}} plus 20 shuffled schedules, all bit-identical"))
}

fn c3_mdt() -> Check {
    // Most nodes at or below 118 (bin 1 of 10 over [0, 1181]).
    let mut big: Vec<usize> = (0..900).map(|i| 1 + i % 118).collect();
    big.extend((0..50).map(|i| 119 + i % 118));
    big.extend((0..10).map(|i| 500 + i));
    big.push(1181);
    let h = DegreeHistogram::from_degrees(big, 10).unwrap().with_mdt();
    ensure(h.arg_max_bin == 1 && h.mdt == Some(118), || format!("max 1181: bin {} MDT {:?}", h.arg_max_bin, h.mdt))?;

    // Degree 3 dominates: bin 3 of 10 over [0, 10].
    let mut small = vec![3usize; 500];
    small.extend([1; 100]);
    small.extend([6; 50]);
    small.push(10);
    let h2 = DegreeHistogram::from_degrees(small, 10).unwrap().with_mdt();
    ensure(h2.arg_max_bin == 3 && h2.mdt == Some(3), || format!("max 10: bin {} MDT {:?}", h2.arg_max_bin, h2.mdt))?;
    Ok("max 1181 / bin 1 -> MDT 118; max 10 / bin 3 -> MDT 3".into())
}

fn c4_split_structure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for i in 0..100u64 {
        let g = if i % 2 == 0 {
            generate_rmat(rng.gen_range(4..=7), rng.gen_range(2..=8), RmatParams::default(), i).unwrap()
        } else {
            let n = rng.gen_range(16..=200);
            generate_er(n, rng.gen_range(n..=6 * n), i).unwrap()
        };
        let want = dijkstra(&g, 0).unwrap();
        for mdt in 1..=g.max_outdegree() {
            let s = split_graph(&g, mdt).map_err(|e| e.to_string())?;
            ensure(s.graph.max_outdegree() <= mdt, || format!("graph {i} mdt {mdt}: degree above threshold"))?;
            ensure(s.graph.num_edges() == g.num_edges(), || format!("graph {i} mdt {mdt}: edge count changed"))?;
            for v in 0..g.num_nodes() as u32 {
                let pieces = 1 + s.children(v).len();
                let want_pieces = g.outdegree(v).div_ceil(mdt).max(1);
                ensure(pieces == want_pieces, || format!("graph {i} node {v}: {pieces} pieces, want {want_pieces}"))?;
            }
            let cfg = StrategyConfig {
                kernel: KernelConfig::replay(),
                threshold: Threshold::Fixed(mdt),
                ..StrategyConfig::default()
            };
            let run = Strategy::Ns.run(&g, 0, RelaxOp::Sssp, &cfg).map_err(|e| e.to_string())?;
            ensure(run.dist == want, || format!("graph {i} mdt {mdt}: distances changed"))?;
            checked += 1;
        }
    }
    Ok(format!("100 graphs, {checked} (graph, mdt) pairs: degrees capped, edges kept, ceil(deg/mdt) pieces, distances unchanged"))
}

/// Non-gating companion of criterion 4.
fn c4_soft_split_fraction() -> (bool, String) {
    let g = rmat(14, 1);
    let run = Strategy::Ns.run(&g, 0, RelaxOp::Sssp, &StrategyConfig::default()).unwrap();
    let frac = run.split_fraction.unwrap();
    let msg = format!("rmat14, B = 10: MDT {}, split-node fraction {:.1}% (target < 10%)", run.mdt.unwrap(), frac * 100.0);
    (frac < 0.10, msg)
}

fn c5_wd_partition() -> Check {
    let mut kernels = 0;
    for (g, threads) in [(rmat(14, 2), None), (rmat(14, 2), Some(1000)), (rmat(12, 5), Some(4096)), (star(3000), Some(7))] {
        let kernel = KernelConfig { threads, ..KernelConfig::default() };
        let mut err = None;
        Strategy::Wd
            .run_observed(&g, 0, RelaxOp::Sssp, &strategy_cfg(kernel), &mut |ev: &KernelEvent<'_>| {
                if err.is_some() {
                    return;
                }
                let p = ev.partition.unwrap();
                let lens: Vec<u64> = ev.active.iter().map(|&u| g.outdegree(u) as u64).collect();
                let total: u64 = lens.iter().sum();
                let bound = total.div_ceil(p.threads as u64);
                let mut seen = HashSet::new();
                let mut max_load = 0;
                for t in 0..p.threads {
                    let mut load = 0u64;
                    for (slot, run) in p.segments(t) {
                        for e in run {
                            if e as u64 >= lens[slot] || !seen.insert((slot, e)) {
                                err = Some(format!("iteration {}: edge ({slot}, {e}) invalid or repeated", ev.record.iteration));
                            }
                            load += 1;
                        }
                    }
                    max_load = max_load.max(load);
                }
                if seen.len() as u64 != total || max_load != bound {
                    err = Some(format!(
                        "iteration {}: covered {} of {total}, max load {max_load} vs {bound}",
                        ev.record.iteration,
                        seen.len()
                    ));
                }
                kernels += 1;
            })
            .map_err(|e| e.to_string())?;
        if let Some(e) = err {
            return Err(e);
        }
    }

    let g = two_hubs(5, 7);
    let run = Strategy::Wd
        .run(&g, 0, RelaxOp::Bfs, &strategy_cfg(KernelConfig::replay().with_threads(4)))
        .map_err(|e| e.to_string())?;
    let work = &run.records[1].per_thread_work;
    ensure(*work == vec![3, 3, 3, 3], || format!("degrees 5 and 7 on 4 threads gave {work:?}"))?;
    Ok(format!("{kernels} kernels disjoint, covering, max load = ceil(total/T); degrees 5+7 on T=4 -> [3, 3, 3, 3]"))
}

fn c6_hp_sub_iterations() -> Check {
    let no_fallback = |mdt| StrategyConfig {
        kernel: KernelConfig::replay(),
        threshold: Threshold::Fixed(mdt),
        hp_fallback: false,
        ..StrategyConfig::default()
    };
    let dst: Vec<u32> = (1..=100).collect();
    let fan = CsrGraph::from_edges(101, &[0; 100], &dst, None).unwrap();
    let run = Strategy::Hp.run(&fan, 0, RelaxOp::Bfs, &no_fallback(5)).map_err(|e| e.to_string())?;
    let subs = run.records.iter().filter(|r| r.iteration == 0).count();
    ensure(subs == 20, || format!("100 edges, MDT 5: {subs} sub-iterations"))?;

    let run = Strategy::Hp.run(&two_hubs(5, 7), 0, RelaxOp::Bfs, &no_fallback(3)).map_err(|e| e.to_string())?;
    let subs = run.records.iter().filter(|r| r.iteration == 1).count();
    ensure(subs == 3, || format!("degrees 5 and 7, MDT 3: {subs} sub-iterations"))?;

    let (mut fallback, mut total) = (0, 0);
    for g in [rmat(14, 1), generate_er(1 << 14, 4 << 14, 1).unwrap()] {
        let run = Strategy::Hp.run(&g, 0, RelaxOp::Sssp, &StrategyConfig::default()).map_err(|e| e.to_string())?;
        for r in &run.records {
            let small = r.active_items < 1024;
            ensure(small == (r.strategy == KernelTag::WdFallback), || {
                format!("list of {} tagged {}", r.active_items, r.strategy)
            })?;
            fallback += small as usize;
            total += 1;
        }
    }
    Ok(format!("100/5 -> 20, 7/3 -> 3; {fallback} of {total} invocations under 1024 items, all tagged WD-fallback"))
}

fn c7_chunking() -> Check {
    let mut ratios = Vec::new();
    for (name, g) in suite_graphs() {
        let mut cfg = strategy_cfg(KernelConfig::default());
        let chunked = Strategy::Ep.run(&g, 0, RelaxOp::Sssp, &cfg).map_err(|e| e.to_string())?;
        cfg.chunked = false;
        let plain = Strategy::Ep.run(&g, 0, RelaxOp::Sssp, &cfg).map_err(|e| e.to_string())?;
        ensure(chunked.dist == plain.dist, || format!("{name}: distances differ"))?;
        let (c, p) = (chunked.total_push_ops(), plain.total_push_ops());
        let fan_out = (0..g.num_nodes() as u32).any(|v| v != 0 && chunked.dist[v as usize] != u64::MAX && g.outdegree(v) > 1);
        if fan_out {
            ensure(c < p, || format!("{name}: chunked {c} vs unchunked {p}"))?;
        } else {
            ensure(c <= p, || format!("{name}: chunked {c} vs unchunked {p}"))?;
        }
        ratios.push(format!("{name} {:.2}x", p as f64 / c.max(1) as f64));
    }
    Ok(format!("push-atomic reduction: {}", ratios.join(", ")))
}

fn c8_imbalance_order() -> Check {
    let cfg = StrategyConfig::default();
    let mut worst = [f64::MAX; 3];
    for seed in 0..10 {
        let g = rmat(14, seed);
        for op in [RelaxOp::Bfs, RelaxOp::Sssp] {
            let sd = |s: Strategy| s.run(&g, 0, op, &cfg).map(|r| r.summed_stddev_work()).map_err(|e| e.to_string());
            let (bs, ep, wd, ns) = (sd(Strategy::Bs)?, sd(Strategy::Ep)?, sd(Strategy::Wd)?, sd(Strategy::Ns)?);
            ensure(ep < bs && wd < bs && ns < bs, || {
                format!("seed {seed} {op}: BS {bs:.1}, EP {ep:.1}, WD {wd:.1}, NS {ns:.1}")
            })?;
            for (w, x) in worst.iter_mut().zip([ep, wd, ns]) {
                *w = w.min(bs / x);
            }
        }
    }
    Ok(format!(
        "10 seeds x {{BFS, SSSP}}: EP, WD, NS < BS; smallest BS/x ratios {:.1}, {:.1}, {:.1}",
        worst[0], worst[1], worst[2]
    ))
}

fn c9_coo_cliff() -> Check {
    let g = generate_er(1 << 17, 600_000, 9).unwrap();
    let mut cfg = RunConfig::new(GraphSource::Provided {
        name: "er-600k".into(),
        graph: Arc::new(g.clone()),
    });
    cfg.mem_budget = CooBudget { cells: 1_000_000 };
    cfg.verify = true;
    let r = run_on_graph(&cfg, "er-600k", &g).map_err(|e| e.to_string())?;
    for o in &r.outcomes {
        let s = o.summary.strategy;
        if s == Strategy::Ep {
            ensure(o.summary.status == Status::InfeasibleMemory, || format!("EP status {}", o.summary.status))?;
        } else {
            let ok = o.summary.status == Status::Ok && o.verification.as_ref().is_some_and(|v| v.matched);
            ensure(ok, || format!("{s} did not complete and verify"))?;
        }
    }
    let rows = report_rows(&r);
    let ep_row = rows.iter().find(|r| r.strategy == "EP" && r.is_summary()).unwrap();
    ensure(ep_row.status == "infeasible: memory", || format!("EP report status '{}'", ep_row.status))?;
    Ok("600k weighted edges need 1.8M cells > 1M: EP 'infeasible: memory', BS/WD/NS/HP verified".into())
}

fn c10_scan_and_condense() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..1000 {
        let len = rng.gen_range(0..5000);
        let values: Vec<u64> = (0..len).map(|_| rng.gen_range(0..1u64 << 32)).collect();
        let mut acc = 0u64;
        let want: Vec<u64> = values.iter().map(|v| { acc += v; acc }).collect();
        ensure(inclusive_scan(&values).unwrap() == want, || format!("scan array {i} differs"))?;
    }
    let check_condense = |items: &[u32]| -> bool {
        let out = condense(items);
        let mut seen = HashSet::new();
        let firsts: Vec<u32> = items.iter().copied().filter(|x| seen.insert(*x)).collect();
        out == firsts
    };
    for i in 0..1000 {
        let len = rng.gen_range(0..2000);
        let universe = rng.gen_range(1..400);
        let items: Vec<u32> = (0..len).map(|_| rng.gen_range(0..universe)).collect();
        ensure(check_condense(&items), || format!("condense list {i} wrong"))?;
    }

    // Node i (1..=k) reaches hub h with a weight that shrinks as i grows, so
    // in thread order every relaxation of h succeeds and pushes its whole
    // out-edge run again.
    let k = 40u32;
    let d = 40u32;
    let h = k + 1;
    let (mut src, mut dst, mut wt) = (Vec::new(), Vec::new(), Vec::new());
    for i in 1..=k {
        src.extend([0, i]);
        dst.extend([i, h]);
        wt.extend([1, k - i + 1]);
    }
    for j in 0..d {
        src.push(h);
        dst.push(h + 1 + j);
        wt.push(1);
    }
    let g = CsrGraph::from_edges((h + 1 + d) as usize, &src, &dst, Some(&wt)).unwrap();
    let mut raw: Vec<u32> = Vec::new();
    Strategy::Ep
        .run_observed(&g, 0, RelaxOp::Sssp, &strategy_cfg(KernelConfig::replay()), &mut |ev: &KernelEvent<'_>| {
            if ev.output.len() > raw.len() {
                raw = ev.output.to_vec();
            }
        })
        .map_err(|e| e.to_string())?;
    ensure(raw.len() > g.num_edges(), || format!("explosion reached only {} items", raw.len()))?;
    ensure(check_condense(&raw), || "condense wrong on the explosion list".into())?;
    let kept = condense(&raw).len();
    Ok(format!(
        "1000 scans, 1000 condenses; EP explosion {} items over {} edges condensed to {kept}",
        raw.len(),
        g.num_edges()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence", c1_oracle_equivalence),
        ("2 scheduling confluence", c2_confluence),
        ("3 MDT reproduction", c3_mdt),
        ("4 NS structure", c4_split_structure),
        ("5 WD partition", c5_wd_partition),
        ("6 HP sub-iterations", c6_hp_sub_iterations),
        ("7 work chunking", c7_chunking),
        ("8 imbalance ordering", c8_imbalance_order),
        ("9 COO feasibility cliff", c9_coo_cliff),
        ("10 scan and condense", c10_scan_and_condense),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
        if name.starts_with("4 ") {
            let (ok, detail) = c4_soft_split_fraction();
            let tag = if ok { "SOFT-PASS" } else { "SOFT-FAIL" };
            println!("[{tag}] 4 split fraction (soft, not gating): {detail}");
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
