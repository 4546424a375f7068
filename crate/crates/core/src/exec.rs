//! Execution strategy for the sweep drivers.
//!
//! Sweeps are embarrassingly parallel over independent instances. With the
//! `parallel` feature (default) they fan out on the rayon pool; without it,
//! or with [`ExecMode::Sequential`], they run on the calling thread. Results
//! are always collected in input order, so reports do not depend on the
//! execution mode or thread count.

/// How a sweep distributes its per-instance work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Use the rayon pool when the `parallel` feature is enabled; otherwise
    /// identical to `Sequential`.
    #[default]
    Parallel,
    /// Process instances on the calling thread.
    Sequential,
}

/// Maps `f` over `items`, honoring the execution mode; output order matches
/// input order.
pub fn map_collect<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => map_parallel(items, f),
    }
}

#[cfg(feature = "parallel")]
fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    items.iter().map(f).collect()
}

/// Sizes the global rayon pool; `1` keeps everything on one worker. Without
/// the `parallel` feature this is a no-op. Returns the effective thread
/// count.
pub fn configure_threads(n: usize) -> usize {
    let n = n.max(1);
    #[cfg(feature = "parallel")]
    {
        // ignore the error when a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
        n
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let items: Vec<u32> = (0..100).collect();
        let seq = map_collect(ExecMode::Sequential, &items, |x| x * 2);
        let par = map_collect(ExecMode::Parallel, &items, |x| x * 2);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 6);
    }
}
