//! Deterministic chunked map-reduce over index ranges.
//!
//! All heavy enumerations in this crate walk a `0..len` index space. The
//! helpers here split that space into fixed chunks, map every chunk to a
//! partial result, and merge the partials in chunk order. Because the merge
//! is always applied left-to-right over the ordered partials, the result is
//! identical no matter how many worker threads rayon happens to use, and
//! identical to the sequential build (`--no-default-features`).

use std::ops::Range;

/// Picks a chunk size that gives each thread a few chunks to chew on while
/// keeping per-chunk bookkeeping negligible.
pub fn default_chunk(len: u64) -> u64 {
    let target = (len / 64).max(1);
    target.clamp(1, 1 << 16)
}

fn chunk_ranges(len: u64, chunk: u64) -> Vec<Range<u64>> {
    let chunk = chunk.max(1);
    let mut out = Vec::with_capacity(((len + chunk - 1) / chunk) as usize);
    let mut start = 0;
    while start < len {
        let end = (start + chunk).min(len);
        out.push(start..end);
        start = end;
    }
    out
}

/// Sequential reference path; also the fallback when the `parallel` feature
/// is disabled.
pub fn fold_chunks_seq<A, F, M>(len: u64, chunk: u64, map: F, merge: M, init: A) -> A
where
    F: Fn(Range<u64>) -> A,
    M: Fn(A, A) -> A,
{
    chunk_ranges(len, chunk)
        .into_iter()
        .fold(init, |acc, r| merge(acc, map(r)))
}

#[cfg(feature = "parallel")]
pub fn fold_chunks<A, F, M>(len: u64, chunk: u64, map: F, merge: M, init: A) -> A
where
    A: Send,
    F: Fn(Range<u64>) -> A + Sync + Send,
    M: Fn(A, A) -> A,
{
    use rayon::prelude::*;
    let ranges = chunk_ranges(len, chunk);
    let partials: Vec<A> = ranges.into_par_iter().map(map).collect();
    partials.into_iter().fold(init, merge)
}

#[cfg(not(feature = "parallel"))]
pub fn fold_chunks<A, F, M>(len: u64, chunk: u64, map: F, merge: M, init: A) -> A
where
    A: Send,
    F: Fn(Range<u64>) -> A + Sync + Send,
    M: Fn(A, A) -> A,
{
    fold_chunks_seq(len, chunk, map, merge, init)
}

/// Order-preserving parallel map.
#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

/// Runs `f` inside a dedicated pool of `workers` threads. `workers = 0`
/// keeps the global default. Without the `parallel` feature the closure
/// simply runs on the caller's thread.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        f()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(f)
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R: Send>(_workers: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}
