//! Thread-pool executor for the solvers' independent jobs.

use planarint_core::exec::Executor;
use rayon::prelude::*;

pub struct Threaded {
    pool: rayon::ThreadPool,
}

impl Threaded {
    /// `threads == 0` picks the number of available cores.
    pub fn new(threads: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool starts");
        Threaded { pool }
    }

    /// Thread count from `PLANARINT_THREADS`, defaulting to automatic.
    pub fn from_env() -> Self {
        let threads = std::env::var("PLANARINT_THREADS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(0);
        Self::new(threads)
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Threaded {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        let f = &f;
        self.pool.install(|| (0..jobs).into_par_iter().map(f).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_job_order() {
        let exec = Threaded::new(4);
        assert_eq!(exec.threads(), 4);
        let out = exec.map(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
