//! Range-parallel execution helpers.
//!
//! The heavy enumerations (H^2 table scans, finite-quotient counting,
//! sampled law sweeps) are folds over index ranges whose results do not
//! depend on how the range is partitioned. With the `parallel` feature
//! (default) they fan out over rayon; without it they fall back to the
//! sequential loops. The `*_seq` variants are always sequential so the
//! bench suite can compare both on the same build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Count indices in `0..n` satisfying the predicate.
pub fn count_where<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().filter(|&i| pred(i)).count() as u64
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_where_seq(n, pred)
    }
}

/// Sequential twin of [`count_where`].
pub fn count_where_seq<F>(n: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool,
{
    (0..n).filter(|&i| pred(i)).count() as u64
}

/// First index in `0..n` satisfying the predicate (lowest index, so the
/// answer is independent of the partitioning).
pub fn find_first<F>(n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().find_first(|&i| pred(i))
    }
    #[cfg(not(feature = "parallel"))]
    {
        find_first_seq(n, pred)
    }
}

/// Sequential twin of [`find_first`].
pub fn find_first_seq<F>(n: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool,
{
    (0..n).find(|&i| pred(i))
}

/// Map each index in `0..n` and collect in index order.
pub fn map_collect<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn par_and_seq_agree() {
        let pred = |i: u64| i % 7 == 3;
        assert_eq!(count_where(10_000, pred), count_where_seq(10_000, pred));
        assert_eq!(find_first(10_000, pred), find_first_seq(10_000, pred));
        assert_eq!(find_first(10_000, |i| i > 5_000), Some(5_001));
        assert_eq!(find_first(100, |_| false), None);
    }

    #[test]
    fn map_collect_preserves_order() {
        let v = map_collect(100, |i| i * i);
        assert_eq!(v[10], 100);
        assert_eq!(v.len(), 100);
    }
}
