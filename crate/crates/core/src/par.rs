//! Fork-join helpers shared by the construction phases.
//!
//! Every parallel phase in this crate runs on an [`Executor`], which owns a
//! rayon pool sized to the requested thread count (or runs inline for one
//! thread). Work is split into static chunks of `ceil(len / threads)` so the
//! decomposition, and therefore the output, never depends on scheduling.

use std::cell::UnsafeCell;

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// A fixed-size pool of worker threads, or the calling thread when `threads == 1`.
pub struct Executor {
    threads: usize,
    pool: Option<ThreadPool>,
}

impl Executor {
    /// Creates an executor with `threads` workers. Zero is treated as one.
    pub fn new(threads: usize) -> Self {
        let threads = threads.max(1);
        let pool = if threads > 1 {
            ThreadPoolBuilder::new()
                .num_threads(threads)
                .thread_name(|i| format!("pemb-{i}"))
                .build()
                .ok()
        } else {
            None
        };
        Self { threads, pool }
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Runs `op` inside the pool (or inline).
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    /// Static chunk length for a loop of `len` iterations.
    pub fn chunk_len(&self, len: usize) -> usize {
        len.div_ceil(self.threads).max(1)
    }

    /// Calls `body(t, range)` once per static chunk, in parallel.
    pub fn for_chunks<F>(&self, len: usize, body: F)
    where
        F: Fn(usize, std::ops::Range<usize>) + Send + Sync,
    {
        if len == 0 {
            return;
        }
        let chk = self.chunk_len(len);
        let chunks = len.div_ceil(chk);
        if chunks == 1 {
            body(0, 0..len);
            return;
        }
        self.install(|| {
            (0..chunks).into_par_iter().for_each(|t| {
                let lo = t * chk;
                body(t, lo..(lo + chk).min(len));
            })
        });
    }

    /// Like [`Executor::for_chunks`] but hands each chunk its slice of `data`.
    pub fn for_chunks_mut<T, F>(&self, data: &mut [T], body: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Send + Sync,
    {
        if data.is_empty() {
            return;
        }
        let chk = self.chunk_len(data.len());
        if chk >= data.len() {
            body(0, data);
            return;
        }
        self.install(|| {
            data.par_chunks_mut(chk)
                .enumerate()
                .for_each(|(t, part)| body(t * chk, part))
        });
    }

    /// Maps each static chunk to a value, returning the values in chunk order.
    pub fn map_chunks<R, F>(&self, len: usize, body: F) -> Vec<R>
    where
        R: Send,
        F: Fn(std::ops::Range<usize>) -> R + Send + Sync,
    {
        if len == 0 {
            return Vec::new();
        }
        let chk = self.chunk_len(len);
        let chunks = len.div_ceil(chk);
        if chunks == 1 {
            return vec![body(0..len)];
        }
        self.install(|| {
            (0..chunks)
                .into_par_iter()
                .map(|t| {
                    let lo = t * chk;
                    body(lo..(lo + chk).min(len))
                })
                .collect()
        })
    }
}

/// Exclusive prefix sums of `values`: `out[i] = values[0] + ... + values[i-1]`.
///
/// Three passes: per-chunk totals, a sequential scan over the `threads`
/// totals, then a per-chunk local scan seeded with the chunk offset.
pub fn prefix_sum(values: &[u64], threads: usize) -> Vec<u64> {
    let exec = Executor::new(threads);
    prefix_sum_with(&exec, values)
}

pub(crate) fn prefix_sum_with(exec: &Executor, values: &[u64]) -> Vec<u64> {
    let totals = exec.map_chunks(values.len(), |r| values[r].iter().sum::<u64>());
    let mut offsets = Vec::with_capacity(totals.len());
    let mut acc = 0u64;
    for t in totals {
        offsets.push(acc);
        acc += t;
    }
    let mut out = vec![0u64; values.len()];
    exec.for_chunks_mut(&mut out, |lo, part| {
        let mut run = offsets[lo / exec.chunk_len(values.len())];
        for (k, slot) in part.iter_mut().enumerate() {
            *slot = run;
            run += values[lo + k];
        }
    });
    out
}

/// A slice that many threads may write through, provided each index is
/// written by at most one thread and nobody reads it concurrently.
pub(crate) struct DisjointSlice<'a, T> {
    cells: &'a [UnsafeCell<T>],
}

unsafe impl<T: Send> Sync for DisjointSlice<'_, T> {}
unsafe impl<T: Send> Send for DisjointSlice<'_, T> {}

impl<'a, T> DisjointSlice<'a, T> {
    pub fn new(slice: &'a mut [T]) -> Self {
        let len = slice.len();
        let ptr = slice.as_mut_ptr() as *const UnsafeCell<T>;
        // SAFETY: UnsafeCell<T> is repr(transparent) over T and we hold the
        // unique borrow for 'a.
        let cells = unsafe { std::slice::from_raw_parts(ptr, len) };
        Self { cells }
    }

    /// # Safety
    /// No other thread may access index `i` while the returned reference lives.
    #[allow(clippy::mut_from_ref)]
    pub unsafe fn get_mut(&self, i: usize) -> &mut T {
        &mut *self.cells[i].get()
    }

    /// # Safety
    /// No other thread may be writing index `i`.
    pub unsafe fn get(&self, i: usize) -> &T {
        &*self.cells[i].get()
    }
}
