//! Tuple sweeps with a declared quantification regime.
//!
//! A sweep over index tuples is exhaustive when the tuple count fits the
//! budget. Otherwise it is exhaustive over the systematic prefixes (shrunk
//! evenly until they fit) and then checks `samples` seeded random tuples
//! over the whole population. Exhaustive parts report the lexicographically
//! least witness; the sampled part reports the first one drawn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::SweepConfig;
use crate::exec::tuple_count;

/// Default largest exhaustive tuple count.
pub const TUPLE_BUDGET: usize = 1 << 16;

/// How much of a tuple space a sweep covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Coverage {
    pub exhaustive: bool,
    pub tuples: usize,
}

impl Coverage {
    pub fn to_json(self) -> Value {
        json!({ "exhaustive": self.exhaustive, "tuples": self.tuples })
    }
}

/// A witness and whether it came from the sampled part.
pub(crate) struct Found<W> {
    pub index: Vec<usize>,
    pub sampled: bool,
    pub witness: W,
}

/// Per-law random stream, so adding a law does not perturb the others.
pub(crate) fn law_rng(cfg: &SweepConfig, law: &str) -> ChaCha8Rng {
    let salt = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt)
}

/// Prefix lengths whose product fits `budget`.
fn prefixes(sizes: &[usize], structured: &[usize], budget: usize) -> Vec<usize> {
    let mut p: Vec<usize> = sizes.iter().zip(structured).map(|(&s, &t)| t.min(s)).collect();
    while tuple_count(&p).is_none_or(|n| n > budget) {
        let widest = (0..p.len()).max_by_key(|&k| (p[k], usize::MAX - k)).expect("nonempty tuple shape");
        p[widest] /= 2;
    }
    p
}

/// Lexicographically least tuple `t` with `f(t) = Some`, over `sizes`.
pub(crate) fn sweep<W, F>(
    cfg: &SweepConfig,
    law: &str,
    sizes: &[usize],
    structured: &[usize],
    f: F,
) -> (Option<Found<W>>, Coverage)
where
    W: Send,
    F: Fn(&[usize]) -> Option<W> + Sync + Send,
{
    let total = tuple_count(sizes);
    let unflatten = |mut k: usize, radices: &[usize]| {
        let mut t = vec![0; radices.len()];
        for slot in (0..radices.len()).rev() {
            t[slot] = k % radices[slot];
            k /= radices[slot];
        }
        t
    };
    if let Some(n) = total.filter(|&n| n <= cfg.tuple_budget) {
        let found = cfg.exec.find_first(n, |k| {
            let t = unflatten(k, sizes);
            f(&t).map(|w| Found { index: t, sampled: false, witness: w })
        });
        return (found, Coverage { exhaustive: true, tuples: n });
    }
    let p = prefixes(sizes, structured, cfg.tuple_budget);
    let np = tuple_count(&p).unwrap_or(0);
    let found = cfg.exec.find_first(np, |k| {
        let t = unflatten(k, &p);
        f(&t).map(|w| Found { index: t, sampled: false, witness: w })
    });
    let coverage = Coverage { exhaustive: false, tuples: np + cfg.samples };
    if found.is_some() {
        return (found, coverage);
    }
    let mut rng = law_rng(cfg, law);
    let draws: Vec<Vec<usize>> =
        (0..cfg.samples).map(|_| sizes.iter().map(|&s| rng.random_range(0..s)).collect()).collect();
    let found = cfg.exec.find_first(draws.len(), |k| {
        f(&draws[k]).map(|w| Found { index: draws[k].clone(), sampled: true, witness: w })
    });
    (found, coverage)
}

/// Sweep of `(i, k, j)` where `row(i, j)` yields the least failing `k`
/// with its witness. The witness is least in `(i, k, j)` order.
pub(crate) fn sweep_rows<W, F>(
    cfg: &SweepConfig,
    law: &str,
    sizes: [usize; 2],
    structured: [usize; 2],
    row: F,
) -> (Option<Found<W>>, Coverage)
where
    W: Send,
    F: Fn(usize, usize) -> Option<(usize, W)> + Sync + Send,
{
    let least_in = |i: usize, js: usize| {
        let mut best: Option<(usize, usize, W)> = None;
        for j in 0..js {
            if let Some((k, w)) = row(i, j) {
                if best.as_ref().is_none_or(|(bk, _, _)| k < *bk) {
                    best = Some((k, j, w));
                }
                if k == 0 {
                    break;
                }
            }
        }
        best.map(|(k, j, w)| Found { index: vec![i, k, j], sampled: false, witness: w })
    };
    let total = tuple_count(&sizes);
    if let Some(n) = total.filter(|&n| n <= cfg.tuple_budget) {
        let found = cfg.exec.find_first(sizes[0], |i| least_in(i, sizes[1]));
        return (found, Coverage { exhaustive: true, tuples: n });
    }
    let p = prefixes(&sizes, &structured, cfg.tuple_budget);
    let found = cfg.exec.find_first(p[0], |i| least_in(i, p[1]));
    let coverage = Coverage { exhaustive: false, tuples: p[0] * p[1] + cfg.samples };
    if found.is_some() {
        return (found, coverage);
    }
    let mut rng = law_rng(cfg, law);
    let draws: Vec<(usize, usize)> =
        (0..cfg.samples).map(|_| (rng.random_range(0..sizes[0]), rng.random_range(0..sizes[1]))).collect();
    let found = cfg.exec.find_first(draws.len(), |d| {
        let (i, j) = draws[d];
        row(i, j).map(|(k, w)| Found { index: vec![i, k, j], sampled: true, witness: w })
    });
    (found, coverage)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;

    fn cfg(budget: usize) -> SweepConfig {
        SweepConfig { tuple_budget: budget, samples: 50, exec: Exec::Sequential, ..SweepConfig::default() }
    }

    #[test]
    fn exhaustive_sweep_finds_least_tuple() {
        let (found, cov) = sweep(&cfg(1000), "t", &[10, 10], &[10, 10], |t| (t[0] + t[1] == 9).then_some(()));
        let found = found.unwrap();
        assert_eq!(found.index, vec![0, 9]);
        assert!(cov.exhaustive && cov.tuples == 100);
    }

    #[test]
    fn over_budget_sweeps_prefix_then_samples() {
        let (found, cov) = sweep(&cfg(16), "t", &[10, 10], &[10, 10], |t| (t[0] >= 8 && t[1] >= 8).then_some(()));
        assert!(!cov.exhaustive);
        // Prefixes shrink 10×10 → 5×10 → 5×5 → 2×5.
        assert_eq!(cov.tuples, 10 + 50);
        if let Some(f) = found {
            assert!(f.sampled);
        }
    }

    #[test]
    fn rows_order_middle_index_before_last() {
        // Failures at (0, k=3, j=0) and (0, k=1, j=5): the least in (i, k, j) order is the second.
        let (found, _) = sweep_rows(&cfg(1000), "t", [2, 6], [2, 6], |i, j| match (i, j) {
            (0, 0) => Some((3, ())),
            (0, 5) => Some((1, ())),
            _ => None,
        });
        assert_eq!(found.unwrap().index, vec![0, 1, 5]);
    }

    #[test]
    fn prefixes_shrink_the_widest_first() {
        assert_eq!(prefixes(&[100, 4], &[100, 4], 100), vec![25, 4]);
    }
}
