//! Thin indirection over rayon so the whole crate can be built with a
//! sequential fallback (`--no-default-features`). Results are collected in
//! input order either way, so reductions stay deterministic.

#[cfg(feature = "parallel")]
pub fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(&I) -> T,
{
    items.iter().map(f).collect()
}

/// Sequential version, always available; the criterion bench compares this
/// against `map_collect`.
pub fn map_collect_seq<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(&I) -> T,
{
    items.iter().map(f).collect()
}
