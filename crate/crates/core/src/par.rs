//! Order-preserving parallel map. Falls back to a plain iterator without the
//! `parallel` feature.

use alloc::vec::Vec;

/// `Send + Sync` when the `parallel` feature is on, empty otherwise.
///
/// Closures handed to grid and quadrature routines carry this bound so that
/// the same signatures work with and without rayon.
#[cfg(feature = "parallel")]
pub trait Shareable: Send + Sync {}
#[cfg(feature = "parallel")]
impl<T: Send + Sync + ?Sized> Shareable for T {}

/// `Send + Sync` when the `parallel` feature is on, empty otherwise.
#[cfg(not(feature = "parallel"))]
pub trait Shareable {}
#[cfg(not(feature = "parallel"))]
impl<T: ?Sized> Shareable for T {}

#[cfg(feature = "parallel")]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Shareable,
    R: Send,
    F: Fn(&T) -> R + Shareable,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Shareable,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}
