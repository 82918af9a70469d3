use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Distance value. [`INF`] marks unreached nodes.
pub type Dist = u64;

pub const INF: Dist = Dist::MAX;

/// Shared distance labels updated only through atomic minimum.
#[derive(Debug)]
pub struct DistArray {
    cells: Vec<AtomicU64>,
}

impl DistArray {
    /// `len` cells, all [`INF`].
    pub fn new(len: usize) -> Self {
        Self {
            cells: (0..len).map(|_| AtomicU64::new(INF)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    #[inline]
    pub fn get(&self, node: NodeId) -> Dist {
        self.cells[node as usize].load(Ordering::Relaxed)
    }

    /// Lowers `node` to `candidate` if that is smaller. Returns whether the
    /// stored value strictly decreased.
    #[inline]
    pub fn relax_min(&self, node: NodeId, candidate: Dist) -> Result<bool> {
        let cell = self.cells.get(node as usize).ok_or(Error::NodeOutOfRange {
            node: node as u64,
            num_nodes: self.cells.len(),
        })?;
        let old = cell.fetch_min(candidate, Ordering::AcqRel);
        Ok(candidate < old)
    }

    pub fn to_vec(&self) -> Vec<Dist> {
        self.cells.iter().map(|c| c.load(Ordering::Relaxed)).collect()
    }

    pub fn into_vec(self) -> Vec<Dist> {
        self.cells.into_iter().map(AtomicU64::into_inner).collect()
    }
}
