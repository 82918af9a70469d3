#![allow(dead_code)]

use lbgraph::graph::{CsrGraph, NodeId, Weight};
use proptest::prelude::*;

pub fn path(n: u32) -> CsrGraph {
    let src: Vec<u32> = (0..n - 1).collect();
    let dst: Vec<u32> = (1..n).collect();
    let wt: Vec<u32> = (0..n - 1).map(|i| 1 + i % 3).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

/// Hub 0 points at every other node, and every leaf points back.
pub fn star(n: u32) -> CsrGraph {
    let mut src = Vec::new();
    let mut dst = Vec::new();
    for v in 1..n {
        src.extend([0, v]);
        dst.extend([v, 0]);
    }
    let wt: Vec<u32> = (0..src.len() as u32).map(|i| 1 + i % 7).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

pub fn ring(n: u32) -> CsrGraph {
    let src: Vec<u32> = (0..n).collect();
    let dst: Vec<u32> = (0..n).map(|v| (v + 1) % n).collect();
    let wt: Vec<u32> = (0..n).map(|i| 1 + i % 5).collect();
    CsrGraph::from_edges(n as usize, &src, &dst, Some(&wt)).unwrap()
}

/// Small weighted multigraph, self-loops and zero weights allowed.
pub fn arb_graph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = CsrGraph> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let edge = (0..n as NodeId, 0..n as NodeId, 0..20 as Weight);
        prop::collection::vec(edge, 0..=max_edges).prop_map(move |edges| {
            let src: Vec<_> = edges.iter().map(|e| e.0).collect();
            let dst: Vec<_> = edges.iter().map(|e| e.1).collect();
            let wt: Vec<_> = edges.iter().map(|e| e.2).collect();
            CsrGraph::from_edges(n, &src, &dst, Some(&wt)).unwrap()
        })
    })
}

/// A graph whose out-degrees are skewed: a few hubs with many edges.
pub fn arb_skewed_graph() -> impl Strategy<Value = CsrGraph> {
    (8usize..60, prop::collection::vec((0u32..4, 1u32..60, 1u32..30), 0..200), any::<u64>()).prop_map(
        |(n, hub_edges, salt)| {
            let mut src = Vec::new();
            let mut dst = Vec::new();
            let mut wt = Vec::new();
            for (i, (h, v, w)) in hub_edges.into_iter().enumerate() {
                src.push(h % n as u32);
                dst.push(v % n as u32);
                wt.push(w);
                // A sparse chain so hubs are reached from various nodes.
                let a = (salt.wrapping_add(i as u64) % n as u64) as u32;
                src.push(a);
                dst.push((a + 1) % n as u32);
                wt.push(1 + (i as u32 % 4));
            }
            CsrGraph::from_edges(n, &src, &dst, Some(&wt)).unwrap()
        },
    )
}
