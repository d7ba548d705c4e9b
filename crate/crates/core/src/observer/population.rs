//! Declared test populations.
//!
//! A population is an ordered, duplicate-free list whose first `structured`
//! entries are systematic (deltas, small-coefficient spans, whole carriers)
//! and whose remainder is seeded random.

use std::collections::HashSet;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::SweepConfig;
use crate::groupoid::{local_bisections, ArrowSet, FiniteGroupoid};
use crate::groupoid_algebra::random_coefficient;
use crate::linear_powerspace::Powerspace;
use crate::scalar_linalg::{Echelon, GaussianRational, Subspace};

#[derive(Clone, Debug)]
pub struct Population<E> {
    elements: Vec<E>,
    structured: usize,
    summary: Value,
}

impl<E: Clone + Eq + Hash> Population<E> {
    /// The whole carrier.
    pub fn exhaustive(elements: Vec<E>) -> Self {
        let mut builder = Builder::default();
        builder.extend(elements);
        let n = builder.elements.len();
        Self { elements: builder.elements, structured: n, summary: json!({ "exhaustive": n }) }
    }

    /// A hand-picked list, treated as systematic.
    pub fn listed(elements: Vec<E>, summary: Value) -> Self {
        let mut builder = Builder::default();
        builder.extend(elements);
        let n = builder.elements.len();
        Self { elements: builder.elements, structured: n, summary }
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Length of the systematic prefix.
    pub fn structured(&self) -> usize {
        self.structured
    }

    pub fn summary(&self) -> &Value {
        &self.summary
    }
}

struct Builder<E> {
    seen: HashSet<E>,
    elements: Vec<E>,
}

impl<E> Default for Builder<E> {
    fn default() -> Self {
        Self { seen: HashSet::new(), elements: Vec::new() }
    }
}

impl<E: Clone + Eq + Hash> Builder<E> {
    /// Appends the first occurrence of each element; returns how many were new.
    fn extend(&mut self, items: impl IntoIterator<Item = E>) -> usize {
        let before = self.elements.len();
        for x in items {
            if self.seen.insert(x.clone()) {
                self.elements.push(x);
            }
        }
        self.elements.len() - before
    }
}

fn fits(base: u128, exp: usize, threshold: usize) -> bool {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)).is_some_and(|n| n <= threshold as u128)
}

/// Domain population for `Max ℂG`, in this order:
/// 1. `ι(U)` for every `U ⊆ G₁` by mask, when `2^|G₁| ≤ threshold`;
/// 2. `⟨v⟩` for every `v ∈ {0, 1, −1}^G₁` in lexicographic digit order `0, 1, −1`,
///    when `3^|G₁| ≤ threshold`;
/// 3. `samples` random subspaces: dimension uniform in `[0, |G₁|]`, spanned by
///    vectors with coefficients uniform in `{0, ±1, ±i, 1±i}`.
///
/// Later duplicates are dropped.
pub fn powerspace_population(alg: &Powerspace, cfg: &SweepConfig) -> Population<Subspace> {
    let k = alg.dim();
    let mut builder = Builder::default();
    let delta = if fits(2, k, cfg.threshold) {
        builder.extend((0..1u128 << k).map(|mask| alg.iota(ArrowSet(mask))))
    } else {
        0
    };
    let coefficient = if fits(3, k, cfg.threshold) {
        let digits = [GaussianRational::zero(), GaussianRational::one(), GaussianRational::int(-1, 0)];
        let count = 3usize.pow(k as u32);
        builder.extend((0..count).map(|mut code| {
            let mut v = vec![GaussianRational::zero(); k];
            for slot in (0..k).rev() {
                v[slot] = digits[code % 3].clone();
                code /= 3;
            }
            let mut e = Echelon::new(k);
            e.insert(v);
            e.finish()
        }))
    } else {
        0
    };
    let structured = builder.elements.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = builder.extend((0..cfg.samples).map(|_| random_subspace(k, &mut rng)));
    Population {
        summary: json!({
            "delta": delta,
            "coefficient": coefficient,
            "random": random,
            "distinct": builder.elements.len(),
        }),
        elements: builder.elements,
        structured,
    }
}

/// Uniform target dimension; vectors are drawn until the span reaches it.
fn random_subspace(k: usize, rng: &mut ChaCha8Rng) -> Subspace {
    let target = rng.random_range(0..=k);
    let mut e = Echelon::new(k);
    // A draw is dependent with probability at most 6/7 per coordinate; the cap
    // only guards against pathological streams.
    let mut attempts = 0;
    while e.rank() < target && attempts < 64 * (k + 1) {
        e.insert((0..k).map(|_| random_coefficient(rng)).collect());
        attempts += 1;
    }
    e.finish()
}

/// Codomain population for `𝒪(G)`: every arrow set when `2^|G₁| ≤ threshold`;
/// otherwise `∅`, `G₀`, `G₁`, singletons, local bisections and `samples` random masks.
pub fn arrow_set_population(g: &FiniteGroupoid, cfg: &SweepConfig) -> Population<ArrowSet> {
    let k = g.arrow_count();
    if fits(2, k, cfg.threshold) {
        return Population::exhaustive((0..1u128 << k).map(ArrowSet).collect());
    }
    let mut builder = Builder::default();
    builder.extend([ArrowSet::EMPTY, g.units(), g.all_arrows()]);
    builder.extend((0..k).map(ArrowSet::singleton));
    builder.extend(local_bisections(g));
    let structured = builder.elements.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed_0a11);
    let all = g.all_arrows().0;
    let random = builder.extend((0..cfg.samples).map(|_| ArrowSet(rng.random::<u128>() & all)));
    Population {
        summary: json!({ "structured": structured, "random": random, "distinct": builder.elements.len() }),
        elements: builder.elements,
        structured,
    }
}
