//! Proposal-space scan helpers. With the `parallel` feature the scans are
//! partitioned across rayon workers; the sequential variants are always
//! available and both paths return the identical lexicographic-first result.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn find_first_seq<F>(end: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..end).find(|&c| pred(c))
}

pub fn min_key_seq<K, F>(end: u64, f: F) -> Option<K>
where
    K: Ord + Send,
    F: Fn(u64) -> Option<K> + Sync + Send,
{
    (0..end).filter_map(f).min()
}

#[cfg(feature = "parallel")]
pub fn find_first<F>(end: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..end).into_par_iter().find_first(|&c| pred(c))
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<F>(end: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    find_first_seq(end, pred)
}

#[cfg(feature = "parallel")]
pub fn min_key<K, F>(end: u64, f: F) -> Option<K>
where
    K: Ord + Send,
    F: Fn(u64) -> Option<K> + Sync + Send,
{
    (0..end).into_par_iter().filter_map(f).min()
}

#[cfg(not(feature = "parallel"))]
pub fn min_key<K, F>(end: u64, f: F) -> Option<K>
where
    K: Ord + Send,
    F: Fn(u64) -> Option<K> + Sync + Send,
{
    min_key_seq(end, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let pred = |c: u64| c % 97 == 13;
        assert_eq!(find_first(1000, pred), find_first_seq(1000, pred));
        assert_eq!(find_first(10, |_| false), None);

        let key = |c: u64| {
            if c % 3 == 0 {
                Some(((c * 7919) % 100, c))
            } else {
                None
            }
        };
        assert_eq!(min_key(5000, key), min_key_seq(5000, key));
    }
}
