use rayon::prelude::*;

use crate::error::CliError;

pub const JOBS_ENV: &str = "VACSHIFT_JOBS";

/// Worker count: the flag wins over the environment; zero lets the pool
/// pick one thread per core.
pub fn resolve_jobs(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{JOBS_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(0),
    }
}

/// Maps `f` over `items` on `jobs` threads, keeping input order.
pub fn ordered_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}
