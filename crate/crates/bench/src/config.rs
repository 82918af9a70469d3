use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use lbgraph::engine::KernelConfig;
use lbgraph::graph::{generate_er, generate_rmat, load_binary, load_dimacs_gr, read_edge_list, CooBudget, CsrGraph, NodeId, RmatParams};
use lbgraph::strategies::{RelaxOp, Strategy, StrategyConfig, Threshold};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Dimacs,
    /// `u v [w]` lines; weighted when the first edge line has three fields.
    EdgeList,
    Binary,
}

impl FromStr for GraphFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "dimacs" | "gr" => Ok(GraphFormat::Dimacs),
            "edgelist" => Ok(GraphFormat::EdgeList),
            "bin" => Ok(GraphFormat::Binary),
            other => Err(BenchError::Config(format!("unknown graph format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenSpec {
    /// `2^scale` nodes and `edge_factor * 2^scale` edges.
    Rmat { scale: u32, edge_factor: usize, params: RmatParams },
    Er { scale: u32, edge_factor: usize },
}

#[derive(Debug, Clone)]
pub enum GraphSource {
    File { path: PathBuf, format: GraphFormat },
    Generated(GenSpec),
    /// An already-built graph, for library callers.
    Provided { name: String, graph: Arc<CsrGraph> },
}

impl GraphSource {
    /// Label used in the `graph` report column.
    pub fn name(&self) -> String {
        match self {
            GraphSource::File { path, .. } => path.file_name().unwrap_or(path.as_os_str()).to_string_lossy().into_owned(),
            GraphSource::Generated(GenSpec::Rmat { scale, edge_factor, .. }) => format!("rmat{scale}-ef{edge_factor}"),
            GraphSource::Generated(GenSpec::Er { scale, edge_factor }) => format!("er{scale}-ef{edge_factor}"),
            GraphSource::Provided { name, .. } => name.clone(),
        }
    }

    pub fn load(&self, seed: u64) -> Result<Arc<CsrGraph>, BenchError> {
        let g = match self {
            GraphSource::File { path, format } => match format {
                GraphFormat::Dimacs => load_dimacs_gr(path)?,
                GraphFormat::Binary => load_binary(path)?,
                GraphFormat::EdgeList => {
                    let text = fs::read_to_string(path).map_err(lbgraph::Error::from)?;
                    let weighted = text
                        .lines()
                        .map(|l| l.split('#').next().unwrap_or(""))
                        .find(|l| !l.trim().is_empty())
                        .is_some_and(|l| l.split_whitespace().count() == 3);
                    read_edge_list(text.as_bytes(), path, weighted)?
                }
            },
            GraphSource::Generated(GenSpec::Rmat { scale, edge_factor, params }) => generate_rmat(*scale, *edge_factor, *params, seed)?,
            GraphSource::Generated(GenSpec::Er { scale, edge_factor }) => {
                if *scale > 31 {
                    return Err(BenchError::Config(format!("scale {scale} is above 31")));
                }
                let n = 1usize << scale;
                generate_er(n, n * edge_factor, seed)?
            }
            GraphSource::Provided { graph, .. } => return Ok(Arc::clone(graph)),
        };
        Ok(Arc::new(g))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(BenchError::Config(format!("unknown report format '{other}'"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        })
    }
}

/// Parses `all` or a comma-separated list of strategy tags.
pub fn parse_strategies(list: &str) -> Result<Vec<Strategy>, BenchError> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Strategy::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tag in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let s: Strategy = tag.parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    if out.is_empty() {
        return Err(BenchError::Config("no strategy selected".into()));
    }
    Ok(out)
}

/// One benchmark: a graph, an algorithm and the strategies to compare on it.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: GraphSource,
    pub algo: RelaxOp,
    pub strategies: Vec<Strategy>,
    pub source: NodeId,
    /// Fixed virtual-thread count; `None` sizes each kernel from its input.
    pub threads: Option<usize>,
    /// Worker pool size; `None` uses the available parallelism.
    pub workers: Option<usize>,
    pub bins: usize,
    pub mdt: Option<usize>,
    pub chunked: bool,
    pub mem_budget: CooBudget,
    pub seed: u64,
    pub verify: bool,
    pub replay: bool,
}

impl RunConfig {
    pub fn new(graph: GraphSource) -> Self {
        Self {
            graph,
            algo: RelaxOp::Sssp,
            strategies: Strategy::ALL.to_vec(),
            source: 0,
            threads: None,
            workers: None,
            bins: lbgraph::graph::DEFAULT_BINS,
            mdt: None,
            chunked: true,
            mem_budget: CooBudget::default(),
            seed: 1,
            verify: false,
            replay: false,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.strategies.is_empty() {
            return Err(BenchError::Config("no strategy selected".into()));
        }
        if self.bins == 0 {
            return Err(BenchError::Config("--bins must be at least 1".into()));
        }
        if self.mdt == Some(0) {
            return Err(BenchError::Config("--mdt must be at least 1".into()));
        }
        self.strategy_config().kernel.validate()?;
        Ok(())
    }

    pub fn strategy_config(&self) -> StrategyConfig {
        let mut kernel = if self.replay { KernelConfig::replay() } else { KernelConfig::default() };
        kernel.threads = self.threads;
        if let Some(w) = self.workers {
            kernel.workers = w;
        }
        StrategyConfig {
            kernel,
            threshold: match self.mdt {
                Some(m) => Threshold::Fixed(m),
                None => Threshold::Histogram { bins: self.bins },
            },
            chunked: self.chunked,
            hp_fallback: true,
            coo_budget: self.mem_budget,
        }
    }
}
