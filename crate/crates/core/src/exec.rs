//! Data-parallel loops with a sequential fallback.
//!
//! Every helper returns results in index order so callers observe the same
//! output whichever path ran.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `(0..n).map(f).collect()`, in parallel when asked and available.
pub(crate) fn map_indexed<T, F>(n: u64, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// Applies `f` to each item and returns the lowest index whose result is
/// `Some`, together with that result.
pub(crate) fn find_first<I, T, F>(items: &[I], parallel: bool, f: F) -> Option<(usize, T)>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        return items
            .par_iter()
            .enumerate()
            .find_map_first(|(i, item)| f(item).map(|t| (i, t)));
    }
    let _ = parallel;
    items
        .iter()
        .enumerate()
        .find_map(|(i, item)| f(item).map(|t| (i, t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let seq = map_indexed(1000, false, |i| i * i);
        let par = map_indexed(1000, true, |i| i * i);
        assert_eq!(seq, par);

        let items: Vec<u32> = (0..500).collect();
        let pick = |x: &u32| (x % 97 == 96).then_some(*x);
        assert_eq!(find_first(&items, false, pick), Some((96, 96)));
        assert_eq!(find_first(&items, true, pick), Some((96, 96)));
        assert_eq!(find_first(&items, true, |_| None::<u32>), None);
    }
}
