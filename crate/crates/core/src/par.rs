//! Data-parallel helpers. With the `parallel` feature (on by default) these
//! run on the rayon pool; without it they fall back to sequential iterators.
//! Both paths return results in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// First item (in input order) satisfying `pred`.
#[cfg(feature = "parallel")]
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    items.par_iter().find_first(|t| pred(t))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T, F>(items: &[T], pred: F) -> Option<&T>
where
    F: Fn(&T) -> bool,
{
    items.iter().find(|t| pred(t))
}

/// Sequential reference path, always available; used by the benches.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}
