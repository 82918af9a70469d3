//! Parallel inclusive prefix sum.
//!
//! Three phases over fixed-size blocks: per-block totals in parallel, a
//! sequential exclusive scan of the totals, then each block scanned in
//! parallel from its carry-in. Integer addition makes the result identical to
//! the sequential fold regardless of block size.

use rayon::prelude::*;

use crate::error::{Error, Result};

const DEFAULT_BLOCK: usize = 1 << 14;

pub fn inclusive_scan(values: &[u64]) -> Result<Vec<u64>> {
    inclusive_scan_blocked(values, DEFAULT_BLOCK)
}

pub fn inclusive_scan_blocked(values: &[u64], block: usize) -> Result<Vec<u64>> {
    let block = block.max(1);
    let totals: Vec<u64> = values
        .par_chunks(block)
        .map(|c| c.iter().try_fold(0u64, |acc, &v| acc.checked_add(v)))
        .collect::<Option<_>>()
        .ok_or(Error::Overflow("inclusive scan"))?;

    let mut carry = Vec::with_capacity(totals.len());
    let mut acc = 0u64;
    for t in totals {
        carry.push(acc);
        acc = acc.checked_add(t).ok_or(Error::Overflow("inclusive scan"))?;
    }

    let mut out = vec![0u64; values.len()];
    out.par_chunks_mut(block)
        .zip(values.par_chunks(block))
        .zip(carry)
        .for_each(|((dst, src), mut running)| {
            // Block totals and carries were overflow-checked above.
            for (d, &v) in dst.iter_mut().zip(src) {
                running += v;
                *d = running;
            }
        });
    Ok(out)
}
