//! Deterministic data parallelism.
//!
//! Every parallel loop in the crate goes through [`map_collect`]: work items
//! are indexed, mapped independently (in parallel when the `parallel` feature
//! is enabled), and collected back in index order. Reductions then run
//! sequentially over the ordered results, so floating-point sums do not
//! depend on the scheduler and a fixed seed gives bit-identical output for
//! any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Counter-based substream: master seed plus stream index give an
/// independent, reproducible generator. Work item `i` always draws from
/// `substream(seed, i)` no matter which thread runs it.
pub fn substream(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Maps `f` over `0..n` and returns the results in index order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Sequential fallback with the same contract as the parallel version.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Always-sequential variant, kept unconditionally compiled so benchmarks can
/// compare the two paths within one build.
pub fn map_collect_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
