//! Pluggable execution of independent jobs.
//!
//! The core crate only ships [`Sequential`]; the std front end provides a threaded
//! executor. Results always come back in job order, so reductions stay deterministic.

use alloc::vec::Vec;

pub trait Executor: Sync {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, F>(&self, jobs: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..jobs).map(f).collect()
    }
}
