//! Host-side emulation of a GPU kernel launch.
//!
//! A launch runs a per-thread body once for every virtual thread id in
//! `0..T`. Virtual threads are mapped onto a small pool of OS workers; the
//! only state they share is what the body reaches through atomics
//! ([`DistArray`] cells, [`Worklist`] cursors and membership flags). The
//! launch returns after every virtual thread has finished, which is the
//! kernel-boundary barrier: anything a kernel wrote is visible to the host and
//! to the next launch.
//!
//! Each virtual thread gets a [`ThreadCtx`] that counts the edge relaxations
//! it attempts and the atomic operations it issues; those counters end up in
//! the [`MetricsRecord`] for the invocation.

mod dist;
mod metrics;
mod scan;
mod worklist;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use dist::{Dist, DistArray, INF};
pub use metrics::{KernelTag, MetricsRecord};
pub use scan::{inclusive_scan, inclusive_scan_blocked};
pub use worklist::{condense, Worklist};

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Cap on the automatically chosen virtual thread count.
pub const MAX_AUTO_THREADS: usize = 1 << 14;

pub const DEFAULT_BLOCK_SIZE: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelConfig {
    /// Virtual threads per launch. `None` picks
    /// `min(2^14, active items rounded up to block_size)` per launch.
    pub threads: Option<usize>,
    pub block_size: usize,
    /// OS-level execution lanes.
    pub workers: usize,
    /// Run thread ids in ascending order on a single lane.
    pub deterministic_replay: bool,
    /// Run thread ids in a seeded random order (ignored under replay).
    pub shuffle_seed: Option<u64>,
}

impl Default for KernelConfig {
    fn default() -> Self {
        Self {
            threads: None,
            block_size: DEFAULT_BLOCK_SIZE,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            deterministic_replay: false,
            shuffle_seed: None,
        }
    }
}

impl KernelConfig {
    pub fn replay() -> Self {
        Self {
            workers: 1,
            deterministic_replay: true,
            ..Self::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_shuffle(mut self, seed: u64) -> Self {
        self.shuffle_seed = Some(seed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.threads == Some(0) {
            return Err(Error::Config("virtual thread count must be at least 1".into()));
        }
        if self.block_size == 0 {
            return Err(Error::Config("block size must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }

    /// Virtual thread count for a launch over `active_items` work items.
    pub fn threads_for(&self, active_items: usize) -> usize {
        self.threads.unwrap_or_else(|| {
            let rounded = active_items.div_ceil(self.block_size).max(1) * self.block_size;
            rounded.min(MAX_AUTO_THREADS)
        })
    }
}

/// Identifies an invocation in its [`MetricsRecord`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelLabel {
    pub iteration: usize,
    pub sub_iteration: Option<usize>,
    pub strategy: KernelTag,
    pub active_items: usize,
}

#[derive(Debug, Clone, Copy, Default)]
struct ThreadTotals {
    work: u64,
    relax_ops: u64,
    push_ops: u64,
}

/// Per-virtual-thread handle passed to kernel bodies.
#[derive(Debug)]
pub struct ThreadCtx {
    tid: usize,
    totals: ThreadTotals,
}

impl ThreadCtx {
    #[inline]
    pub fn tid(&self) -> usize {
        self.tid
    }

    /// Books `edges` attempted relaxations to this thread.
    #[inline]
    pub fn add_work(&mut self, edges: u64) {
        self.totals.work += edges;
    }

    /// Atomic minimum on `dist[node]`, counted as one relax operation.
    #[inline]
    pub fn relax_min(&mut self, dist: &DistArray, node: NodeId, candidate: Dist) -> Result<bool> {
        self.totals.relax_ops += 1;
        dist.relax_min(node, candidate)
    }

    /// Pushes a run with one reservation. Empty runs cost nothing.
    #[inline]
    pub fn push_chunk(&mut self, wl: &Worklist, run: &[u32]) -> Result<Option<usize>> {
        let at = wl.push_chunk(run)?;
        if at.is_some() {
            self.totals.push_ops += 1;
        }
        Ok(at)
    }

    #[inline]
    pub fn push_range(&mut self, wl: &Worklist, range: std::ops::Range<u32>) -> Result<Option<usize>> {
        let at = wl.push_range(range)?;
        if at.is_some() {
            self.totals.push_ops += 1;
        }
        Ok(at)
    }

    /// Pushes `node` unless the worklist already holds it. Returns whether it was pushed.
    #[inline]
    pub fn push_unique(&mut self, wl: &Worklist, node: NodeId) -> Result<bool> {
        if !wl.claim(node) {
            return Ok(false);
        }
        self.push_chunk(wl, &[node])?;
        Ok(true)
    }
}

/// Launches kernels under one [`KernelConfig`]. Not shared between runs.
pub struct Engine {
    cfg: KernelConfig,
    pool: Option<rayon::ThreadPool>,
    launches: u64,
}

impl Engine {
    pub fn new(cfg: KernelConfig) -> Result<Self> {
        cfg.validate()?;
        let pool = if cfg.workers > 1 && !cfg.deterministic_replay {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?;
            Some(pool)
        } else {
            None
        };
        Ok(Self { cfg, pool, launches: 0 })
    }

    pub fn config(&self) -> &KernelConfig {
        &self.cfg
    }

    pub fn threads_for(&self, active_items: usize) -> usize {
        self.cfg.threads_for(active_items)
    }

    /// Runs `body` once per virtual thread id in `0..threads`.
    pub fn launch<F>(&mut self, label: KernelLabel, threads: usize, body: F) -> Result<MetricsRecord>
    where
        F: Fn(&mut ThreadCtx) -> Result<()> + Sync,
    {
        if threads == 0 {
            return Err(Error::Config("cannot launch a kernel with zero threads".into()));
        }
        let launch_no = self.launches;
        self.launches += 1;

        let start = Instant::now();
        let mut totals = vec![ThreadTotals::default(); threads];
        let order = match (self.cfg.deterministic_replay, self.cfg.shuffle_seed) {
            (false, Some(seed)) => {
                let mut ids: Vec<usize> = (0..threads).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ launch_no.wrapping_mul(0x9E37_79B9_7F4A_7C15));
                ids.shuffle(&mut rng);
                Some(ids)
            }
            _ => None,
        };

        match (&self.pool, order) {
            (None, None) => {
                for (tid, slot) in totals.iter_mut().enumerate() {
                    *slot = run_thread(&body, tid)?;
                }
            }
            (None, Some(ids)) => {
                for tid in ids {
                    totals[tid] = run_thread(&body, tid)?;
                }
            }
            (Some(pool), None) => pool.install(|| {
                totals
                    .par_iter_mut()
                    .enumerate()
                    .try_for_each(|(tid, slot)| -> Result<()> {
                        *slot = run_thread(&body, tid)?;
                        Ok(())
                    })
            })?,
            (Some(pool), Some(ids)) => {
                let lane_len = ids.len().div_ceil(self.cfg.workers);
                let lanes: Vec<Vec<(usize, ThreadTotals)>> = pool.install(|| {
                    ids.par_chunks(lane_len)
                        .map(|lane| lane.iter().map(|&tid| Ok((tid, run_thread(&body, tid)?))).collect())
                        .collect::<Result<_>>()
                })?;
                for (tid, t) in lanes.into_iter().flatten() {
                    totals[tid] = t;
                }
            }
        }
        let kernel_wall_time = start.elapsed();

        Ok(MetricsRecord {
            iteration: label.iteration,
            sub_iteration: label.sub_iteration,
            strategy: label.strategy,
            active_items: label.active_items,
            per_thread_work: totals.iter().map(|t| t.work).collect(),
            atomic_relax_ops: totals.iter().map(|t| t.relax_ops).sum(),
            atomic_push_ops: totals.iter().map(|t| t.push_ops).sum(),
            kernel_wall_time,
            overhead_wall_time: Default::default(),
        })
    }
}

fn run_thread<F>(body: &F, tid: usize) -> Result<ThreadTotals>
where
    F: Fn(&mut ThreadCtx) -> Result<()>,
{
    let mut ctx = ThreadCtx {
        tid,
        totals: ThreadTotals::default(),
    };
    match catch_unwind(AssertUnwindSafe(|| body(&mut ctx))) {
        Ok(Ok(())) => Ok(ctx.totals),
        Ok(Err(e)) => Err(Error::Kernel {
            thread_id: tid,
            source: Box::new(e),
        }),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            Err(Error::Launch { thread_id: tid, msg })
        }
    }
}
