use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use lbgraph::graph::{CooBudget, RmatParams};
use lbgraph::strategies::{split_graph, RelaxOp};
use lbgraph_bench::{
    emit_degree_histogram, emit_report, emit_split_degree_histogram, paper_desk_suite, parse_strategies, run_on_graph, BenchError,
    BenchmarkResult, GenSpec, GraphFormat, GraphSource, ReportFormat, RunConfig,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    Rmat,
    Er,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    PaperDesk,
}

/// Compare task-distribution strategies for data-driven BFS and SSSP.
#[derive(Debug, Parser)]
#[command(name = "lbgraph", version)]
struct Cli {
    /// Input graph file; may be repeated with --suite.
    #[arg(long, conflicts_with = "gen")]
    graph: Vec<PathBuf>,
    /// Input format: dimacs, edgelist or bin.
    #[arg(long, default_value = "dimacs")]
    format: GraphFormat,
    /// Generate the input instead of reading it.
    #[arg(long, value_enum)]
    gen: Option<GenKind>,
    /// log2 of the generated node count.
    #[arg(long, default_value_t = 14)]
    scale: u32,
    /// Generated edges per node.
    #[arg(long, default_value_t = 8)]
    edge_factor: usize,
    /// RMAT quadrant probabilities as a,b,c,d.
    #[arg(long, value_parser = parse_rmat)]
    rmat: Option<RmatParams>,
    /// bfs or sssp.
    #[arg(long, default_value = "sssp")]
    algo: RelaxOp,
    /// Comma-separated strategy tags, or `all`.
    #[arg(long, default_value = "all")]
    strategy: String,
    #[arg(long, default_value_t = 0)]
    source: u32,
    /// Fixed virtual-thread count per kernel.
    #[arg(long)]
    threads: Option<usize>,
    /// Worker threads backing the virtual grid.
    #[arg(long)]
    workers: Option<usize>,
    /// Histogram bins used to pick MDT.
    #[arg(long, default_value_t = lbgraph::graph::DEFAULT_BINS)]
    bins: usize,
    /// Use this MDT instead of the histogram choice.
    #[arg(long)]
    mdt: Option<usize>,
    /// Push EP out-edges one atomic at a time.
    #[arg(long)]
    no_chunk: bool,
    /// Memory budget for EP's edge list, in bytes.
    #[arg(long, default_value_t = CooBudget::DEFAULT_BYTES)]
    mem_budget: u64,
    /// Generator seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Check every result against the sequential oracle.
    #[arg(long)]
    verify: bool,
    /// Run virtual threads in order on one lane.
    #[arg(long)]
    replay: bool,
    /// Report destination.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    report: ReportFormat,
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    /// Write the out-degree histogram here, and the post-split one next to it.
    #[arg(long)]
    degree_hist: Option<PathBuf>,
}

fn parse_rmat(s: &str) -> Result<RmatParams, String> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let [a, b, c, d] = v[..] else {
        return Err("expected four comma-separated probabilities".into());
    };
    let p = RmatParams { a, b, c, d };
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

fn sources(cli: &Cli) -> Result<Vec<GraphSource>, BenchError> {
    let files = cli.graph.iter().map(|p| GraphSource::File {
        path: p.clone(),
        format: cli.format,
    });
    if cli.suite.is_some() {
        return Ok(paper_desk_suite().into_iter().chain(files).collect());
    }
    let spec = match cli.gen {
        Some(GenKind::Rmat) => GenSpec::Rmat {
            scale: cli.scale,
            edge_factor: cli.edge_factor,
            params: cli.rmat.unwrap_or_default(),
        },
        Some(GenKind::Er) => GenSpec::Er {
            scale: cli.scale,
            edge_factor: cli.edge_factor,
        },
        None if cli.graph.len() == 1 => return Ok(files.collect()),
        None if cli.graph.is_empty() => return Err(BenchError::Config("give --graph, --gen or --suite".into())),
        None => return Err(BenchError::Config("several --graph files need --suite".into())),
    };
    Ok(vec![GraphSource::Generated(spec)])
}

fn print_result(r: &BenchmarkResult) {
    println!("{} ({} nodes, {} edges), {}", r.graph, r.num_nodes, r.num_edges, r.algo);
    println!(
        "  {:<4} {:>6} {:>6} {:>10} {:>10} {:>12} {:>12} {:>10} {:>10}  status",
        "", "iters", "kerns", "max_work", "sum_sd", "relax_ops", "push_ops", "kernel_ms", "ovh_ms"
    );
    for s in r.summaries() {
        println!(
            "  {:<4} {:>6} {:>6} {:>10} {:>10.1} {:>12} {:>12} {:>10.2} {:>10.2}  {}",
            s.strategy.to_string(),
            s.iterations,
            s.invocations,
            s.max_work,
            s.summed_stddev,
            s.atomic_relax_ops,
            s.atomic_push_ops,
            s.kernel_time.as_secs_f64() * 1e3,
            s.overhead_time.as_secs_f64() * 1e3,
            s.status
        );
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let ext = path.extension().map(|e| format!(".{}", e.to_string_lossy())).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}{ext}"))
}

fn real_main(cli: Cli) -> Result<ExitCode, BenchError> {
    let mut cfg = RunConfig::new(GraphSource::Generated(GenSpec::Er { scale: 1, edge_factor: 1 }));
    cfg.algo = cli.algo;
    cfg.strategies = parse_strategies(&cli.strategy)?;
    cfg.source = cli.source;
    cfg.threads = cli.threads;
    cfg.workers = cli.workers;
    cfg.bins = cli.bins;
    cfg.mdt = cli.mdt;
    cfg.chunked = !cli.no_chunk;
    cfg.mem_budget = CooBudget::from_bytes(cli.mem_budget);
    cfg.seed = cli.seed;
    cfg.verify = cli.verify;
    cfg.replay = cli.replay;
    cfg.validate()?;

    let mut results = Vec::new();
    let mut failure = None;
    for src in sources(&cli)? {
        cfg.graph = src;
        let name = cfg.graph.name();
        let g = cfg.graph.load(cfg.seed)?;
        if let Some(path) = &cli.degree_hist {
            let path = if cli.suite.is_some() { sibling(path, &format!("-{name}")) } else { path.clone() };
            let h = emit_degree_histogram(&g, cfg.bins, &path)?;
            let mdt = cfg.mdt.unwrap_or(h.mdt.unwrap_or(1));
            emit_split_degree_histogram(&split_graph(&g, mdt)?, cfg.bins, sibling(&path, "-split"))?;
        }
        match run_on_graph(&cfg, &name, &g) {
            Ok(r) => {
                print_result(&r);
                results.push(r);
            }
            Err(BenchError::Verification {
                strategy,
                mismatch_count,
                first,
                partial,
            }) => {
                print_result(&partial);
                results.push((*partial).clone());
                failure = Some(BenchError::Verification {
                    strategy,
                    mismatch_count,
                    first,
                    partial,
                });
                break;
            }
            Err(e) => return Err(e),
        }
    }

    if let Some(out) = &cli.out {
        emit_report(&results, out, cli.report)?;
    }
    if let Some(err) = failure {
        return Err(err);
    }
    if results.iter().all(BenchmarkResult::all_infeasible) {
        eprintln!("error: every selected strategy exceeds the memory budget");
        return Ok(ExitCode::from(4));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match real_main(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
