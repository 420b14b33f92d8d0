//! Execution-mode switch for the data-parallel kernels.
//!
//! With the `parallel` feature the row-elimination and batch-reduction loops
//! run on the rayon pool; without it, or when the mode is set to
//! [`Parallelism::Sequential`], the same loops run on the calling thread.
//! Both paths produce identical results.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

pub fn parallelism() -> Parallelism {
    if cfg!(feature = "parallel") && MODE.load(Ordering::Relaxed) == 1 {
        Parallelism::Parallel
    } else {
        Parallelism::Sequential
    }
}

/// Sets the process-wide default. Requesting `Parallel` without the
/// `parallel` feature is a no-op.
pub fn set_parallelism(mode: Parallelism) {
    MODE.store(matches!(mode, Parallelism::Parallel) as u8, Ordering::Relaxed);
}

// below this many elements of work the rayon overhead dominates
#[cfg(feature = "parallel")]
const MIN_PAR_WORK: usize = 1 << 14;

pub(crate) fn for_each_chunk_mut<T, G>(data: &mut [T], chunk: usize, mode: Parallelism, f: G)
where
    T: Send,
    G: Fn(usize, &mut [T]) + Sync + Send,
{
    if chunk == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel && data.len() >= MIN_PAR_WORK {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
        return;
    }
    let _ = mode;
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

pub(crate) fn for_each_mut<T, G>(items: &mut [T], mode: Parallelism, f: G)
where
    T: Send,
    G: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel && items.len() > 1 {
        use rayon::prelude::*;
        items.par_iter_mut().for_each(f);
        return;
    }
    let _ = mode;
    items.iter_mut().for_each(f);
}

/// Order-preserving map over `0..n`.
pub(crate) fn map_range<U, G>(n: usize, mode: Parallelism, f: G) -> Vec<U>
where
    U: Send,
    G: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel && n > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = mode;
    (0..n).map(f).collect()
}
