//! Execution strategy for batch workloads.
//!
//! With the `parallel` feature, [`Exec::Parallel`] maps over rayon's thread
//! pool. Without it, every strategy runs sequentially. Both paths preserve
//! input order, so output is identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether this build can actually run [`Exec::Parallel`] on several threads.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}

/// Runs `f` with at most `jobs` worker threads. `jobs = 1` forces the
/// sequential strategy; `jobs = 0` uses the global default pool.
pub fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce(Exec) -> R + Send) -> R {
    if jobs == 1 {
        return f(Exec::Sequential);
    }
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(|| f(Exec::Parallel));
        }
    }
    f(Exec::Parallel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let xs: Vec<u64> = (0..10_000).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x + 1);
        let par = Exec::Parallel.map(&xs, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 10);
        let pooled = with_jobs(3, |exec| exec.map(&xs, |x| x + 1));
        assert_eq!(pooled, (1..=10_000).collect::<Vec<_>>());
    }
}
