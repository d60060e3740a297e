//! Data-parallel helpers. With the `parallel` feature (default) the inner
//! loops fan out over rayon; without it the same helpers run sequentially.
//! Callers only use order-insensitive reductions, so results are identical
//! either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items` and collect in input order.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Maximum of `f` over `items`; `default` for the empty slice.
pub fn map_max<T, F>(items: &[T], default: usize, f: F) -> usize
where
    T: Sync,
    F: Fn(&T) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).max().unwrap_or(default)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).max().unwrap_or(default)
    }
}

/// First index in `0..count` (by index order) whose predicate result is
/// `Some`, together with that result. Deterministic: ties resolve to the
/// smallest index regardless of schedule.
pub fn find_map_min_index<U, F>(count: usize, f: F) -> Option<(usize, U)>
where
    U: Send,
    F: Fn(usize) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count)
            .into_par_iter()
            .filter_map(|i| f(i).map(|u| (i, u)))
            .min_by_key(|&(i, _)| i)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).find_map(|i| f(i).map(|u| (i, u)))
    }
}
