//! Single-threaded reference algorithms and exact result comparison.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::engine::{Dist, INF};
use crate::error::{Error, Result};
use crate::graph::{CsrGraph, NodeId};

fn check(g: &CsrGraph, source: NodeId) -> Result<()> {
    if source as usize >= g.num_nodes() {
        return Err(Error::NodeOutOfRange {
            node: source as u64,
            num_nodes: g.num_nodes(),
        });
    }
    Ok(())
}

/// Hop counts from `source` by FIFO queue; unreachable nodes stay at [`INF`].
pub fn sequential_bfs(g: &CsrGraph, source: NodeId) -> Result<Vec<Dist>> {
    check(g, source)?;
    let mut level = vec![INF; g.num_nodes()];
    let mut queue = VecDeque::new();
    level[source as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = level[u as usize] + 1;
        for (v, _) in g.neighbors(u) {
            if level[v as usize] == INF {
                level[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    Ok(level)
}

/// Binary-heap Dijkstra over the edge weights (1 for unweighted graphs).
pub fn dijkstra(g: &CsrGraph, source: NodeId) -> Result<Vec<Dist>> {
    check(g, source)?;
    let mut dist = vec![INF; g.num_nodes()];
    let mut heap = BinaryHeap::new();
    dist[source as usize] = 0;
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u as usize] {
            continue;
        }
        for e in g.edge_range(u) {
            let v = g.target(e);
            let cand = d.saturating_add(g.weight(e) as Dist);
            if cand < dist[v as usize] {
                dist[v as usize] = cand;
                heap.push(Reverse((cand, v)));
            }
        }
    }
    Ok(dist)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub node: NodeId,
    pub expected: Dist,
    pub actual: Dist,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub matched: bool,
    pub mismatch_count: usize,
    pub first_mismatch: Option<Mismatch>,
}

/// Exact cell-by-cell comparison.
pub fn verify(expected: &[Dist], actual: &[Dist]) -> Result<VerificationReport> {
    if expected.len() != actual.len() {
        return Err(Error::LengthMismatch {
            expected: expected.len(),
            actual: actual.len(),
        });
    }
    let mut bad = expected.iter().zip(actual).enumerate().filter(|(_, (e, a))| e != a);
    let first_mismatch = bad.next().map(|(i, (&expected, &actual))| Mismatch {
        node: i as NodeId,
        expected,
        actual,
    });
    let mismatch_count = first_mismatch.as_ref().map_or(0, |_| 1 + bad.count());
    Ok(VerificationReport {
        matched: mismatch_count == 0,
        mismatch_count,
        first_mismatch,
    })
}
