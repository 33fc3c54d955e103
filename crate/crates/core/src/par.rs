//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many units of work the sequential path is used even when the
/// `parallel` feature is on.
pub const GRAIN: usize = 1 << 14;

/// `(0..n).map(f).collect()`, fanned out when `work` is large enough.
pub fn map_range<R, F>(n: usize, work: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if work >= GRAIN && n > 1 {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = work;
    (0..n).map(f).collect()
}

/// `items.iter().map(f).collect()`, fanned out when `work` is large enough.
pub fn map_slice<T, R, F>(items: &[T], work: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if work >= GRAIN && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = work;
    items.iter().map(f).collect()
}

/// In-place `for_each` over a mutable slice.
pub fn for_each_mut<T, F>(items: &mut [T], work: usize, f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if work >= GRAIN && items.len() > 1 {
        items.par_iter_mut().for_each(f);
        return;
    }
    let _ = work;
    items.iter_mut().for_each(f);
}

/// Whether this build fans work out across threads.
pub const fn enabled() -> bool {
    cfg!(feature = "parallel")
}

/// Size the global pool. Returns `false` when the pool was already
/// initialized or the build is sequential.
pub fn set_threads(n: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        false
    }
}

/// Run `f` on a dedicated pool of `n` threads; runs `f` directly in a
/// sequential build.
pub fn with_threads<R, F>(n: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
        f()
    }
}
