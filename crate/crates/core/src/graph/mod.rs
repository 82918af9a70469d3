//! Graph representations and everything needed to obtain them.
//!
//! [`CsrGraph`] is the working format for every node-based strategy: `N + 1`
//! row offsets into one concatenated adjacency array of `E` destinations, plus
//! an optional parallel weight array. [`CooGraph`] duplicates the source of
//! every edge so edges can be handed out independently of their owner node;
//! it costs `2E` id cells (`3E` when weighted), which is what [`CooBudget`]
//! polices.

mod degree;
mod generate;
mod io;

use std::ops::Range;

use crate::error::{Error, Result};

pub use degree::{build_histogram, compute_mdt, degree_stats, DegreeHistogram, DegreeStats, DEFAULT_BINS};
pub use generate::{generate_er, generate_rmat, RmatParams, WEIGHT_RANGE};
pub use io::{
    load_binary, load_dimacs_gr, load_edge_list, read_binary, read_dimacs_gr, read_edge_list, save_binary, write_binary,
    BINARY_MAGIC, BINARY_VERSION,
};

/// Node identifier. Four bytes, matching the id width the COO budget assumes.
pub type NodeId = u32;

/// Non-negative integer edge weight.
pub type Weight = u32;

/// Compressed sparse-row graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsrGraph {
    row_offsets: Vec<usize>,
    col_indices: Vec<NodeId>,
    weights: Option<Vec<Weight>>,
}

impl CsrGraph {
    /// Builds a graph from raw CSR arrays, checking every structural invariant.
    pub fn new(row_offsets: Vec<usize>, col_indices: Vec<NodeId>, weights: Option<Vec<Weight>>) -> Result<Self> {
        let Some(&first) = row_offsets.first() else {
            return Err(Error::InvalidGraph("row_offsets must hold num_nodes + 1 entries".into()));
        };
        if first != 0 {
            return Err(Error::InvalidGraph(format!("row_offsets[0] = {first}, expected 0")));
        }
        let num_nodes = row_offsets.len() - 1;
        if num_nodes > NodeId::MAX as usize {
            return Err(Error::InvalidGraph(format!("{num_nodes} nodes do not fit 32-bit ids")));
        }
        if let Some(i) = row_offsets.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidGraph(format!("row_offsets decrease at node {i}")));
        }
        let last = row_offsets[num_nodes];
        if last != col_indices.len() {
            return Err(Error::InvalidGraph(format!(
                "row_offsets end at {last} but there are {} edges",
                col_indices.len()
            )));
        }
        if let Some(&bad) = col_indices.iter().find(|&&c| c as usize >= num_nodes) {
            return Err(Error::NodeOutOfRange {
                node: bad as u64,
                num_nodes,
            });
        }
        if let Some(w) = &weights {
            if w.len() != col_indices.len() {
                return Err(Error::LengthMismatch {
                    expected: col_indices.len(),
                    actual: w.len(),
                });
            }
        }
        Ok(Self {
            row_offsets,
            col_indices,
            weights,
        })
    }

    /// Groups parallel edge arrays by source. Edges sharing a source keep
    /// their relative input order.
    pub fn from_edges(num_nodes: usize, src: &[NodeId], dst: &[NodeId], wt: Option<&[Weight]>) -> Result<Self> {
        if src.len() != dst.len() {
            return Err(Error::LengthMismatch {
                expected: src.len(),
                actual: dst.len(),
            });
        }
        if let Some(w) = wt {
            if w.len() != src.len() {
                return Err(Error::LengthMismatch {
                    expected: src.len(),
                    actual: w.len(),
                });
            }
        }
        if let Some(&bad) = src.iter().chain(dst).find(|&&v| v as usize >= num_nodes) {
            return Err(Error::NodeOutOfRange {
                node: bad as u64,
                num_nodes,
            });
        }

        let mut row_offsets = vec![0usize; num_nodes + 1];
        for &s in src {
            row_offsets[s as usize + 1] += 1;
        }
        for v in 0..num_nodes {
            row_offsets[v + 1] += row_offsets[v];
        }

        let mut cursor = row_offsets[..num_nodes].to_vec();
        let mut col_indices = vec![0; src.len()];
        let mut weights = wt.map(|_| vec![0; src.len()]);
        for (i, (&s, &d)) in src.iter().zip(dst).enumerate() {
            let slot = cursor[s as usize];
            cursor[s as usize] += 1;
            col_indices[slot] = d;
            if let (Some(out), Some(w)) = (weights.as_mut(), wt) {
                out[slot] = w[i];
            }
        }
        Self::new(row_offsets, col_indices, weights)
    }

    /// A graph with `num_nodes` nodes and no edges.
    pub fn empty(num_nodes: usize) -> Self {
        Self {
            row_offsets: vec![0; num_nodes + 1],
            col_indices: Vec::new(),
            weights: None,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.row_offsets.len() - 1
    }

    pub fn num_edges(&self) -> usize {
        self.col_indices.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[NodeId] {
        &self.col_indices
    }

    pub fn weights(&self) -> Option<&[Weight]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    #[inline]
    pub fn outdegree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.row_offsets[v + 1] - self.row_offsets[v]
    }

    /// Indices of `v`'s out-edges in the concatenated adjacency.
    #[inline]
    pub fn edge_range(&self, v: NodeId) -> Range<usize> {
        let v = v as usize;
        self.row_offsets[v]..self.row_offsets[v + 1]
    }

    #[inline]
    pub fn target(&self, edge: usize) -> NodeId {
        self.col_indices[edge]
    }

    /// Weight of an edge; unweighted graphs report 1.
    #[inline]
    pub fn weight(&self, edge: usize) -> Weight {
        match &self.weights {
            Some(w) => w[edge],
            None => 1,
        }
    }

    /// `(destination, weight)` pairs of `v`'s out-edges in adjacency order.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, Weight)> + '_ {
        self.edge_range(v).map(move |e| (self.target(e), self.weight(e)))
    }

    pub fn max_outdegree(&self) -> usize {
        self.row_offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn outdegrees(&self) -> impl Iterator<Item = usize> + Clone + '_ {
        self.row_offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Same structure with the weight array dropped or replaced.
    pub fn with_weights(mut self, weights: Option<Vec<Weight>>) -> Result<Self> {
        if let Some(w) = &weights {
            if w.len() != self.num_edges() {
                return Err(Error::LengthMismatch {
                    expected: self.num_edges(),
                    actual: w.len(),
                });
            }
        }
        self.weights = weights;
        Ok(self)
    }
}

/// Cell budget for the COO layout, counted in 4-byte id/weight cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CooBudget {
    pub cells: u64,
}

impl CooBudget {
    /// 4 GB of device memory holding 4-byte cells.
    pub const DEFAULT_BYTES: u64 = 4_000_000_000;
    pub const CELL_BYTES: u64 = 4;

    pub fn from_bytes(bytes: u64) -> Self {
        Self {
            cells: bytes / Self::CELL_BYTES,
        }
    }

    pub fn unlimited() -> Self {
        Self { cells: u64::MAX }
    }

    /// Cells needed to hold `num_edges` edges: source and destination arrays,
    /// plus a weight array when weighted.
    pub fn required_cells(num_edges: u64, weighted: bool) -> u64 {
        let per_edge = if weighted { 3 } else { 2 };
        num_edges.saturating_mul(per_edge)
    }

    pub fn check(&self, num_edges: u64, weighted: bool) -> Result<()> {
        let required = Self::required_cells(num_edges, weighted);
        if required > self.cells {
            return Err(Error::Capacity {
                required,
                available: self.cells,
            });
        }
        Ok(())
    }
}

impl Default for CooBudget {
    fn default() -> Self {
        Self::from_bytes(Self::DEFAULT_BYTES)
    }
}

/// Coordinate-list graph, sorted by source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooGraph {
    pub num_nodes: usize,
    pub src: Vec<NodeId>,
    pub dst: Vec<NodeId>,
    pub wt: Option<Vec<Weight>>,
}

impl CooGraph {
    pub fn num_edges(&self) -> usize {
        self.src.len()
    }

    /// Number of 4-byte cells this layout occupies.
    pub fn cells(&self) -> u64 {
        CooBudget::required_cells(self.num_edges() as u64, self.wt.is_some())
    }

    #[inline]
    pub fn weight(&self, edge: usize) -> Weight {
        match &self.wt {
            Some(w) => w[edge],
            None => 1,
        }
    }

    /// Regroups by source into CSR.
    pub fn to_csr(&self) -> Result<CsrGraph> {
        CsrGraph::from_edges(self.num_nodes, &self.src, &self.dst, self.wt.as_deref())
    }
}

/// Expands a CSR graph into COO. Edge `i` of the result is edge `i` of the
/// CSR adjacency, so the output is sorted by source.
pub fn csr_to_coo(g: &CsrGraph, budget: CooBudget) -> Result<CooGraph> {
    budget.check(g.num_edges() as u64, g.is_weighted())?;
    let mut src = Vec::with_capacity(g.num_edges());
    for v in 0..g.num_nodes() {
        src.extend(std::iter::repeat_n(v as NodeId, g.outdegree(v as NodeId)));
    }
    Ok(CooGraph {
        num_nodes: g.num_nodes(),
        src,
        dst: g.col_indices().to_vec(),
        wt: g.weights().map(<[Weight]>::to_vec),
    })
}
