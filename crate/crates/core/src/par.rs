//! Data-parallel helpers with a sequential fallback.
//!
//! Results are always collected in input order and reduced sequentially by
//! the caller, so sums are bit-identical whichever path runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "ZEROCERT_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

/// `items.map(f).collect()`, in parallel when enabled and compiled in.
pub fn map_collect<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Parallelism::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Like [`map_collect`] but stops at the first error.
pub fn try_map_collect<T, R, F>(items: &[T], mode: Parallelism, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map_collect(items, mode, f).into_iter().collect()
}

/// Reads the thread cap from `ZEROCERT_THREADS`, if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

/// Caps the global worker pool. Without the `parallel` feature this is a
/// no-op. Fails if the pool was already initialised with another size.
pub fn configure_threads(n: usize) -> Result<()> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .or_else(|e| if rayon::current_num_threads() == n { Ok(()) } else { Err(e) })
            .map_err(|e| Error::Config(format!("cannot configure {n} worker threads: {e}")))?;
    }
    let _ = n;
    Ok(())
}
