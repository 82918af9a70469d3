//! Seeded synthetic graph generators.
//!
//! Both generators are pure functions of their arguments: the same parameters
//! and seed produce byte-identical CSR arrays. Self-loops and parallel edges
//! are kept. Every edge gets a uniform integer weight from [`WEIGHT_RANGE`].

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CsrGraph, NodeId, Weight};
use crate::error::{Error, Result};

pub const WEIGHT_RANGE: RangeInclusive<Weight> = 1..=100;

/// Quadrant probabilities of the recursive matrix model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmatParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for RmatParams {
    fn default() -> Self {
        Self {
            a: 0.45,
            b: 0.15,
            c: 0.15,
            d: 0.25,
        }
    }
}

impl RmatParams {
    pub fn validate(&self) -> Result<()> {
        let ps = [self.a, self.b, self.c, self.d];
        if ps.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Config(format!("RMAT probabilities must be non-negative: {ps:?}")));
        }
        let sum: f64 = ps.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Config(format!("RMAT probabilities sum to {sum}, expected 1")));
        }
        Ok(())
    }
}

/// Directed RMAT graph with `2^scale` nodes and `edge_factor * 2^scale` edges.
pub fn generate_rmat(scale: u32, edge_factor: usize, params: RmatParams, seed: u64) -> Result<CsrGraph> {
    params.validate()?;
    if !(1..=31).contains(&scale) {
        return Err(Error::Config(format!("RMAT scale must be in 1..=31, got {scale}")));
    }
    let num_nodes = 1usize << scale;
    let num_edges = edge_factor
        .checked_mul(num_nodes)
        .ok_or_else(|| Error::Config("RMAT edge count overflows".into()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut src = Vec::with_capacity(num_edges);
    let mut dst = Vec::with_capacity(num_edges);
    let mut wt = Vec::with_capacity(num_edges);
    let (ab, abc) = (params.a + params.b, params.a + params.b + params.c);
    for _ in 0..num_edges {
        let (mut u, mut v) = (0 as NodeId, 0 as NodeId);
        for level in (0..scale).rev() {
            let r: f64 = rng.gen();
            let bit = 1 << level;
            if r < params.a {
            } else if r < ab {
                v |= bit;
            } else if r < abc {
                u |= bit;
            } else {
                u |= bit;
                v |= bit;
            }
        }
        src.push(u);
        dst.push(v);
        wt.push(rng.gen_range(WEIGHT_RANGE));
    }
    CsrGraph::from_edges(num_nodes, &src, &dst, Some(&wt))
}

/// Erdős–Rényi style graph: `num_edges` edges with independently uniform endpoints.
pub fn generate_er(num_nodes: usize, num_edges: usize, seed: u64) -> Result<CsrGraph> {
    if num_nodes > NodeId::MAX as usize {
        return Err(Error::Config(format!("{num_nodes} nodes do not fit 32-bit ids")));
    }
    let max_edges = (num_nodes as u128) * (num_nodes as u128);
    if num_edges as u128 > max_edges {
        return Err(Error::Config(format!(
            "requested {num_edges} edges but {num_nodes} nodes allow at most {max_edges}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut src = Vec::with_capacity(num_edges);
    let mut dst = Vec::with_capacity(num_edges);
    let mut wt = Vec::with_capacity(num_edges);
    for _ in 0..num_edges {
        src.push(rng.gen_range(0..num_nodes) as NodeId);
        dst.push(rng.gen_range(0..num_nodes) as NodeId);
        wt.push(rng.gen_range(WEIGHT_RANGE));
    }
    CsrGraph::from_edges(num_nodes, &src, &dst, Some(&wt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::degree_stats;

    #[test]
    fn rmat_counts_follow_from_scale() {
        let g = generate_rmat(4, 8, RmatParams::default(), 7).unwrap();
        assert_eq!(g.num_nodes(), 16);
        assert_eq!(g.num_edges(), 128);
        assert!(g.weights().unwrap().iter().all(|w| WEIGHT_RANGE.contains(w)));
    }

    #[test]
    fn rmat_is_deterministic() {
        let a = generate_rmat(8, 4, RmatParams::default(), 11).unwrap();
        let b = generate_rmat(8, 4, RmatParams::default(), 11).unwrap();
        assert_eq!(a, b);
        let c = generate_rmat(8, 4, RmatParams::default(), 12).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rmat_rejects_bad_probabilities() {
        let p = RmatParams {
            a: 0.5,
            b: 0.2,
            c: 0.2,
            d: 0.2,
        };
        assert!(matches!(generate_rmat(4, 8, p, 1), Err(Error::Config(_))));
        assert!(generate_rmat(0, 8, RmatParams::default(), 1).is_err());
    }

    #[test]
    fn er_edgeless() {
        let g = generate_er(4, 0, 9).unwrap();
        assert_eq!(g.num_nodes(), 4);
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn er_rejects_too_many_edges() {
        assert!(matches!(generate_er(3, 10, 1), Err(Error::Config(_))));
        assert!(generate_er(3, 9, 1).is_ok());
        assert!(generate_er(0, 1, 1).is_err());
    }

    #[test]
    fn er_average_is_forced_by_counts() {
        let n = 1 << 20;
        let g = generate_er(n, 4 * n, 5).unwrap();
        let s = degree_stats(&g).unwrap();
        assert_eq!(s.avg, 4.0);
    }

    #[test]
    fn er_max_degree_is_moderate() {
        let g = generate_er(1 << 14, 1 << 16, 3).unwrap();
        let s = degree_stats(&g).unwrap();
        assert_eq!(s.avg, 4.0);
        assert!(s.max as f64 >= s.avg && s.max as f64 <= 6.0 * s.avg, "max {}", s.max);
    }
}
