//! Append-only shared worklist with chunked slot reservation.
//!
//! During a kernel, threads only append: a push reserves a contiguous run of
//! slots with a single compare-and-swap on the cursor and then fills the slots
//! it owns. Capacity never changes while a kernel is running; the host grows
//! it between kernels. Items become visible to the host (and to the next
//! kernel) once the launch has returned.

use std::ops::Range;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicUsize, Ordering};

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct Worklist {
    items: Vec<AtomicU32>,
    cursor: AtomicUsize,
    in_list: Option<Vec<AtomicBool>>,
}

impl Worklist {
    pub fn new(capacity: usize) -> Self {
        Self {
            items: fresh_slots(capacity),
            cursor: AtomicUsize::new(0),
            in_list: None,
        }
    }

    /// A node worklist that refuses a second copy of any node in `0..universe`.
    pub fn with_dedup(capacity: usize, universe: usize) -> Self {
        Self {
            in_list: Some((0..universe).map(|_| AtomicBool::new(false)).collect()),
            ..Self::new(capacity)
        }
    }

    pub fn len(&self) -> usize {
        self.cursor.load(Ordering::Acquire)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn capacity(&self) -> usize {
        self.items.len()
    }

    pub fn dedup_enabled(&self) -> bool {
        self.in_list.is_some()
    }

    /// Reserves `len` slots with one atomic update of the cursor and returns
    /// the first reserved index.
    fn reserve(&self, len: usize) -> Result<usize> {
        let capacity = self.items.len();
        let mut cur = self.cursor.load(Ordering::Relaxed);
        loop {
            if cur + len > capacity {
                return Err(Error::WorklistOverflow {
                    requested: len,
                    cursor: cur,
                    capacity,
                });
            }
            match self
                .cursor
                .compare_exchange_weak(cur, cur + len, Ordering::AcqRel, Ordering::Relaxed)
            {
                Ok(_) => return Ok(cur),
                Err(actual) => cur = actual,
            }
        }
    }

    /// Appends a contiguous run of items with a single reservation. Returns the
    /// start index, or `None` for an empty run (which reserves nothing).
    pub fn push_chunk(&self, run: &[u32]) -> Result<Option<usize>> {
        if run.is_empty() {
            return Ok(None);
        }
        let start = self.reserve(run.len())?;
        for (slot, &item) in self.items[start..start + run.len()].iter().zip(run) {
            slot.store(item, Ordering::Relaxed);
        }
        Ok(Some(start))
    }

    /// Appends the consecutive values of `range` with a single reservation.
    pub fn push_range(&self, range: Range<u32>) -> Result<Option<usize>> {
        if range.is_empty() {
            return Ok(None);
        }
        let len = range.len();
        let start = self.reserve(len)?;
        for (slot, item) in self.items[start..start + len].iter().zip(range) {
            slot.store(item, Ordering::Relaxed);
        }
        Ok(Some(start))
    }

    /// Claims `node`'s membership flag. Returns `true` for the caller that
    /// should push it. Without dedup every claim succeeds.
    #[inline]
    pub fn claim(&self, node: u32) -> bool {
        match &self.in_list {
            Some(flags) => !flags[node as usize].swap(true, Ordering::AcqRel),
            None => true,
        }
    }

    /// Snapshot of the published items.
    pub fn to_vec(&self) -> Vec<u32> {
        self.items[..self.len()].iter().map(|a| a.load(Ordering::Relaxed)).collect()
    }

    /// Moves the items out, resetting the cursor and every flag they set.
    pub fn drain(&mut self) -> Vec<u32> {
        let out = self.to_vec();
        if let Some(flags) = &self.in_list {
            for &node in &out {
                flags[node as usize].store(false, Ordering::Relaxed);
            }
        }
        self.cursor.store(0, Ordering::Release);
        out
    }

    /// Grows capacity (doubling) until it is at least `min_capacity`.
    /// Host-side only; published items are kept.
    pub fn reserve_capacity(&mut self, min_capacity: usize) {
        let mut cap = self.items.len().max(1);
        if cap >= min_capacity {
            return;
        }
        while cap < min_capacity {
            cap *= 2;
        }
        let len = self.len();
        let mut items = fresh_slots(cap);
        for (dst, src) in items.iter_mut().zip(&self.items[..len]) {
            *dst.get_mut() = src.load(Ordering::Relaxed);
        }
        self.items = items;
    }

    /// Removes duplicate items in place, keeping first occurrences.
    pub fn condense(&mut self) {
        let kept = condense(&self.to_vec());
        for (slot, &item) in self.items.iter_mut().zip(&kept) {
            *slot.get_mut() = item;
        }
        self.cursor.store(kept.len(), Ordering::Release);
    }
}

fn fresh_slots(n: usize) -> Vec<AtomicU32> {
    (0..n).map(|_| AtomicU32::new(0)).collect()
}

/// Drops repeated items, keeping the first occurrence of each and the
/// relative order of survivors.
pub fn condense(items: &[u32]) -> Vec<u32> {
    let Some(&max) = items.iter().max() else {
        return Vec::new();
    };
    let mut seen = vec![false; max as usize + 1];
    items
        .iter()
        .copied()
        .filter(|&x| !std::mem::replace(&mut seen[x as usize], true))
        .collect()
}
