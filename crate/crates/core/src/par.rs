//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) the helpers below run on the
//! rayon pool; otherwise, or after `set_mode(Mode::Sequential)`, they run as
//! plain iterators. Results never depend on the mode: reductions are
//! performed over fixed chunks and combined in index order.

use std::ops::Range;
use std::sync::atomic::{AtomicU8, Ordering};

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

pub fn set_mode(mode: Mode) {
    MODE.store(matches!(mode, Mode::Parallel) as u8, Ordering::Relaxed);
}

/// The effective mode: always `Sequential` when built without `parallel`.
pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Maps `f` over `0..len`, preserving order.
pub fn map_range<U, F>(len: u64, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(u64) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        return (0..len).into_par_iter().map(f).collect();
    }
    (0..len).map(f).collect()
}

/// Folds `0..len` in chunks of `chunk` indices: each chunk is folded
/// sequentially from `init()`, then chunk results are combined left to right.
pub fn fold_chunks<A, I, F, C>(len: u64, chunk: u64, init: I, fold: F, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, u64) -> A + Sync + Send,
    C: Fn(A, A) -> A,
{
    let chunk = chunk.max(1);
    let chunks = len.div_ceil(chunk);
    let partials = map_range(chunks, |c| {
        let lo = c * chunk;
        let hi = (lo + chunk).min(len);
        (lo..hi).fold(init(), &fold)
    });
    partials.into_iter().fold(init(), combine)
}

/// Runs `count` independent draws split into chunks of `chunk`; chunk `c`
/// gets its own `ChaCha8Rng` stream `c` under `seed`, so the output is the
/// same in both modes and for any worker count.
pub fn sample_chunks<U, F>(seed: u64, count: u64, chunk: u64, draw: F) -> Vec<U>
where
    U: Send,
    F: Fn(&mut ChaCha8Rng) -> U + Sync + Send,
{
    let chunk = chunk.max(1);
    sample_chunk_range(seed, count, chunk, 0..count.div_ceil(chunk), draw)
}

/// The draws of [`sample_chunks`] that fall in the chunks `chunks`, so long
/// streams can be produced batch by batch.
pub fn sample_chunk_range<U, F>(seed: u64, count: u64, chunk: u64, chunks: Range<u64>, draw: F) -> Vec<U>
where
    U: Send,
    F: Fn(&mut ChaCha8Rng) -> U + Sync + Send,
{
    let chunk = chunk.max(1);
    let first = chunks.start;
    let parts = map_range(chunks.end.saturating_sub(first), |i| {
        let c = first + i;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let lo = (c * chunk).min(count);
        let hi = (lo + chunk).min(count);
        (lo..hi).map(|_| draw(&mut rng)).collect::<Vec<_>>()
    });
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let seq = {
            set_mode(Mode::Sequential);
            fold_chunks(1000, 7, || 0u64, |a, i| a + i * i, |a, b| a + b)
        };
        set_mode(Mode::Parallel);
        let par = fold_chunks(1000, 7, || 0u64, |a, i| a + i * i, |a, b| a + b);
        assert_eq!(seq, par);
        assert_eq!(map_range(5, |i| i * 2), vec![0, 2, 4, 6, 8]);
        use rand::Rng;
        let a = sample_chunks(9, 1000, 64, |r| r.random::<u32>());
        set_mode(Mode::Sequential);
        let b = sample_chunks(9, 1000, 64, |r| r.random::<u32>());
        set_mode(Mode::Parallel);
        assert_eq!(a, b);
        assert_ne!(a[0], a[64]);
        let mut pieces = sample_chunk_range(9, 1000, 64, 0..5, |r| r.random::<u32>());
        pieces.extend(sample_chunk_range(9, 1000, 64, 5..16, |r| r.random::<u32>()));
        assert_eq!(pieces, a);
    }
}
