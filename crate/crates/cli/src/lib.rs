//! Frontend for the `qcanon` pipeline: run configuration, report model,
//! renderers and the fixture selftest.

pub mod config;
pub mod render;
pub mod report;
pub mod selftest;

/// Runs `f` on a pool with `workers` threads, or on the global pool when
/// `workers` is `None` or zero.
pub fn with_workers<T: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, rayon::ThreadPoolBuildError> {
    match workers {
        Some(n) if n > 0 => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
        _ => Ok(f()),
    }
}
