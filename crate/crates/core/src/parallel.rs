//! Order-preserving map over instances, data-parallel when the `parallel`
//! feature is enabled and sequential otherwise.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How many worker threads a sweep may use. Results never depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// rayon's global pool
    #[default]
    Auto,
    /// a dedicated pool with this many threads; 0 means `Auto`
    Threads(usize),
}

impl Parallelism {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            None | Some(0) => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_ordered<T, R, F>(items: &[T], parallelism: Parallelism, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match parallelism {
        Parallelism::Sequential | Parallelism::Threads(1) => items.iter().map(f).collect(),
        Parallelism::Auto | Parallelism::Threads(0) => items.par_iter().map(f).collect(),
        Parallelism::Threads(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
            Err(_) => items.iter().map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_ordered<T, R, F>(items: &[T], _parallelism: Parallelism, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..10_000).collect();
        let expected: Vec<u64> = items.iter().map(|x| x * x).collect();
        for p in [
            Parallelism::Sequential,
            Parallelism::Auto,
            Parallelism::Threads(3),
        ] {
            assert_eq!(map_ordered(&items, p, |x| x * x), expected);
        }
    }

    #[test]
    fn jobs_mapping() {
        assert_eq!(Parallelism::from_jobs(None), Parallelism::Auto);
        assert_eq!(Parallelism::from_jobs(Some(1)), Parallelism::Sequential);
        assert_eq!(Parallelism::from_jobs(Some(8)), Parallelism::Threads(8));
    }
}
