//! Order-preserving fan-out helpers. With the `parallel` feature they run on
//! the rayon pool; results are always returned in input order so output never
//! depends on scheduling.

pub(crate) fn map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if crate::config::parallel_enabled() && items.len() > 1 {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    items.into_iter().map(f).collect()
}

/// First `Some` in input order.
pub(crate) fn find_map_first<T, R, F>(items: Vec<T>, f: F) -> Option<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if crate::config::parallel_enabled() && items.len() > 1 {
        use rayon::prelude::*;
        return items.into_par_iter().find_map_first(f);
    }
    items.into_iter().find_map(f)
}
