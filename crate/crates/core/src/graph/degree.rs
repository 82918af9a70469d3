//! Outdegree statistics and the histogram that picks the maximum-degree threshold.

use super::CsrGraph;
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub max: usize,
    pub avg: f64,
    /// Population standard deviation.
    pub stddev: f64,
}

pub fn degree_stats(g: &CsrGraph) -> Result<DegreeStats> {
    if g.num_nodes() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.num_nodes() as f64;
    let avg = g.num_edges() as f64 / n;
    let var = g
        .outdegrees()
        .map(|d| {
            let x = d as f64 - avg;
            x * x
        })
        .sum::<f64>()
        / n;
    Ok(DegreeStats {
        max: g.max_outdegree(),
        avg,
        stddev: var.sqrt(),
    })
}

/// Outdegree histogram over `bin_count` equal-width, right-closed bins
/// covering `[0, max_degree]`. Bin indices are 1-based; degree 0 lands in bin 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeHistogram {
    pub bin_count: usize,
    pub bin_width: f64,
    pub counts: Vec<usize>,
    pub max_degree: usize,
    /// Lowest 1-based bin index with the largest count.
    pub arg_max_bin: usize,
    /// Filled in by [`DegreeHistogram::with_mdt`].
    pub mdt: Option<usize>,
}

impl DegreeHistogram {
    pub fn from_degrees<I>(degrees: I, bins: usize) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
        I::IntoIter: Clone,
    {
        if bins == 0 {
            return Err(Error::Config("histogram needs at least one bin".into()));
        }
        let degrees = degrees.into_iter();
        let max_degree = degrees.clone().max().unwrap_or(0);
        let mut counts = vec![0usize; bins];
        for d in degrees {
            counts[bin_of(d, max_degree, bins) - 1] += 1;
        }
        // max_by_key keeps the last maximum; scan manually for the first one.
        let mut arg_max = 0;
        for (i, &c) in counts.iter().enumerate() {
            if c > counts[arg_max] {
                arg_max = i;
            }
        }
        Ok(Self {
            bin_count: bins,
            bin_width: max_degree as f64 / bins as f64,
            counts,
            max_degree,
            arg_max_bin: arg_max + 1,
            mdt: None,
        })
    }

    /// 1-based bin holding `degree`.
    pub fn bin_of(&self, degree: usize) -> usize {
        bin_of(degree, self.max_degree, self.bin_count)
    }

    /// Degree range `(low, high]` of a 1-based bin; bin 1 also holds degree 0.
    pub fn bin_bounds(&self, bin: usize) -> (f64, f64) {
        ((bin - 1) as f64 * self.bin_width, bin as f64 * self.bin_width)
    }

    pub fn with_mdt(mut self) -> Self {
        self.mdt = Some(compute_mdt(&self));
        self
    }
}

fn bin_of(degree: usize, max_degree: usize, bins: usize) -> usize {
    if degree == 0 || max_degree == 0 {
        return 1;
    }
    // ceil(degree * bins / max_degree), exact in integers.
    let num = degree as u128 * bins as u128;
    let bin = num.div_ceil(max_degree as u128) as usize;
    bin.clamp(1, bins)
}

pub fn build_histogram(g: &CsrGraph, bins: usize) -> Result<DegreeHistogram> {
    DegreeHistogram::from_degrees(g.outdegrees(), bins)
}

/// `max(1, floor(arg_max_bin / bin_count * max_degree))`.
pub fn compute_mdt(h: &DegreeHistogram) -> usize {
    let raw = (h.arg_max_bin as u128 * h.max_degree as u128) / h.bin_count as u128;
    (raw as usize).max(1)
}
