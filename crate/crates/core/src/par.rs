//! Index-range drivers that run on rayon when `parallel` is enabled and
//! sequentially otherwise. Both variants return identical results.

use alloc::vec::Vec;
use core::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First (least-index) `Some` produced by `f` over `range`.
pub(crate) fn find_map_first<T, F>(range: Range<usize>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().find_map(f)
    }
}

/// `f` applied to every index, collected in index order.
pub(crate) fn map_collect<T, F>(range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.into_iter().map(f).collect()
    }
}
