//! Execution policy for law sweeps.
//!
//! Every sweep is expressed over an index range so that the sequential and
//! parallel paths visit the same tuples and return the same (least) witness.

/// How a sweep is evaluated. Without the `parallel` feature both variants run sequentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// `f(0), f(1), …, f(n-1)` in index order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.map_range(items.len(), |k| f(&items[k]))
    }

    /// The result for the least index at which `f` returns `Some`.
    pub fn find_first<R, F>(self, n: usize, f: F) -> Option<R>
    where
        R: Send,
        F: Fn(usize) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().find_map_first(f)
            }
            _ => (0..n).find_map(f),
        }
    }
}

/// Decodes a flat index into mixed-radix digits, most significant first.
pub(crate) fn unflatten<const K: usize>(mut k: usize, radices: [usize; K]) -> [usize; K] {
    let mut out = [0; K];
    for slot in (0..K).rev() {
        out[slot] = k % radices[slot];
        k /= radices[slot];
    }
    out
}

/// Product of radices, or `None` on overflow.
pub(crate) fn tuple_count(radices: &[usize]) -> Option<usize> {
    radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequential_and_parallel_agree() {
        let f = |k: usize| (k * 7919 % 13 == 5).then_some(k);
        assert_eq!(Exec::Sequential.find_first(1000, f), Exec::Parallel.find_first(1000, f));
        assert_eq!(Exec::Sequential.map_range(50, |k| k * k), Exec::Parallel.map_range(50, |k| k * k));
    }

    #[test]
    fn unflatten_is_lexicographic() {
        assert_eq!(unflatten(0, [3, 4]), [0, 0]);
        assert_eq!(unflatten(5, [3, 4]), [1, 1]);
        assert_eq!(unflatten(11, [3, 4]), [2, 3]);
    }
}
