//! Data-parallel map with a sequential fallback.
//!
//! With the `parallel` feature (default) the map runs on rayon; `jobs`
//! selects a dedicated pool size, `Some(1)` forces sequential execution, and
//! `None` uses the global pool. Without the feature every call is sequential.
//! Output order is by index either way, so results are identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(len: usize, jobs: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    match jobs {
        Some(1) => (0..len).map(f).collect(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(|| (0..len).into_par_iter().map(&f).collect()),
        None => (0..len).into_par_iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(len: usize, _jobs: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..len).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_by_index() {
        let squares = map_indexed(100, None, |i| i * i);
        assert_eq!(squares, (0..100).map(|i| i * i).collect::<Vec<_>>());
        assert_eq!(map_indexed(100, Some(1), |i| i * i), squares);
        assert_eq!(map_indexed(100, Some(3), |i| i * i), squares);
    }
}
