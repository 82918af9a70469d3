use std::fmt;
use std::time::Duration;

/// What kind of kernel produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelTag {
    Bs,
    Ep,
    Wd,
    Ns,
    Hp,
    /// A hierarchical-processing list small enough to be handed to
    /// workload decomposition.
    WdFallback,
}

impl KernelTag {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelTag::Bs => "BS",
            KernelTag::Ep => "EP",
            KernelTag::Wd => "WD",
            KernelTag::Ns => "NS",
            KernelTag::Hp => "HP",
            KernelTag::WdFallback => "WD-fallback",
        }
    }
}

impl fmt::Display for KernelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Counters for one kernel invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub iteration: usize,
    pub sub_iteration: Option<usize>,
    pub strategy: KernelTag,
    pub active_items: usize,
    /// Edge relaxations attempted by each virtual thread.
    pub per_thread_work: Vec<u64>,
    pub atomic_relax_ops: u64,
    pub atomic_push_ops: u64,
    pub kernel_wall_time: Duration,
    /// Host work attributed to this invocation: scans, offsets, condensing
    /// and worklist bookkeeping. One-time setup is kept on the run itself.
    pub overhead_wall_time: Duration,
}

impl MetricsRecord {
    pub fn threads(&self) -> usize {
        self.per_thread_work.len()
    }

    pub fn total_work(&self) -> u64 {
        self.per_thread_work.iter().sum()
    }

    pub fn max_work(&self) -> u64 {
        self.per_thread_work.iter().copied().max().unwrap_or(0)
    }

    pub fn avg_work(&self) -> f64 {
        if self.per_thread_work.is_empty() {
            return 0.0;
        }
        self.total_work() as f64 / self.threads() as f64
    }

    /// Population standard deviation of per-thread work.
    pub fn stddev_work(&self) -> f64 {
        if self.per_thread_work.is_empty() {
            return 0.0;
        }
        let avg = self.avg_work();
        let var = self
            .per_thread_work
            .iter()
            .map(|&w| {
                let x = w as f64 - avg;
                x * x
            })
            .sum::<f64>()
            / self.threads() as f64;
        var.sqrt()
    }
}
