//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off.

/// Folds `items` into per-worker accumulators and merges them. With
/// `sequential`, a single-thread pool, or without the `parallel` feature
/// this is a plain fold (merging accumulators only pays off with workers).
pub(crate) fn fold_reduce<T, Acc, I, F, M>(items: &[T], sequential: bool, init: I, fold: F, merge: M) -> Acc
where
    T: Sync,
    Acc: Send,
    I: Fn() -> Acc + Sync + Send,
    F: Fn(Acc, &T) -> Acc + Sync + Send,
    M: Fn(Acc, Acc) -> Acc + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !sequential && rayon::current_num_threads() > 1 {
        use rayon::prelude::*;
        return items.par_iter().fold(&init, &fold).reduce(&init, &merge);
    }
    let _ = (&merge, sequential);
    items.iter().fold(init(), fold)
}

/// Runs `f` on a pool with `threads` workers (global pool when `None`).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => return pool.install(f),
            Err(e) => log::warn!("could not build a {n}-thread pool: {e}"),
        }
    }
    let _ = threads;
    f()
}

/// Whether the crate was built with the rayon backend.
pub const PARALLEL: bool = cfg!(feature = "parallel");
