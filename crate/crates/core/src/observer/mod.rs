//! Observer maps `p = (ι, r) : M → Ω` and their verification harness.
//!
//! `ι : Ω → M` is the embedding and `r : M → Ω` the retraction. Laws are
//! never assumed: [`verify_observer`] sweeps them over a declared population.
//!
//! Concrete observers:
//! - [`CanonicalObserver`]: `(C_c(−), osupp) : Max ℂG → 𝒪(G)`;
//! - [`LocalObserver`]: `(inclusion, (−)∧e) : Q → ↓e` for an inverse quantal frame;
//! - [`IdentityObserver`]: `ι = r = id`;
//! - [`Composed`]: `(ι₁∘ι₂, r₂∘r₁)`, e.g. the base observer `p₀ : Max ℂG → 𝒪(G₀)`.

mod population;
mod pseudogroup;
mod suites;
mod sweep;

use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::finite_quantale::{is_inverse_quantal_frame, FiniteInvolutiveQuantale, DEFAULT_THRESHOLD};
use crate::groupoid::{structure_report, ArrowSet, ArrowSetQuantale, FiniteGroupoid};
use crate::groupoid_algebra::{convolve_coords, sandwich_support, support_of};
use crate::linear_powerspace::Powerspace;
use crate::measurement::{FiniteQuantale, InvolutiveQuantale};
use crate::scalar_linalg::{GaussianRational, Subspace};

pub use population::{arrow_set_population, powerspace_population, Population};
pub use pseudogroup::pseudogroup_correspondence;
pub use suites::{find_persistency_witness, verify_observer, verify_observer_on, Persistency, Suite};
pub use sweep::TUPLE_BUDGET;

/// Population and sweep parameters. Identical configs give identical reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub seed: u64,
    /// Random domain elements, and random tuples once a sweep exceeds `tuple_budget`.
    pub samples: usize,
    /// Largest carrier enumerated exhaustively.
    pub threshold: usize,
    /// Largest tuple count swept exhaustively.
    pub tuple_budget: usize,
    pub exec: Exec,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 512, threshold: DEFAULT_THRESHOLD, tuple_budget: TUPLE_BUDGET, exec: Exec::default() }
    }
}

type Dom<O> = <<O as ObserverMap>::Domain as InvolutiveQuantale>::Elem;
type Cod<O> = <<O as ObserverMap>::Codomain as InvolutiveQuantale>::Elem;

/// A pair `(ι, r)` between a measurement space and a listable quantale.
///
/// The `retract_*` methods compute `r` of products; overriding them must not
/// change their values, only their cost.
pub trait ObserverMap: Send + Sync {
    type Domain: InvolutiveQuantale;
    type Codomain: FiniteQuantale;

    fn domain(&self) -> &Self::Domain;
    fn codomain(&self) -> &Self::Codomain;
    fn iota(&self, w: &Cod<Self>) -> Dom<Self>;
    fn retract(&self, m: &Dom<Self>) -> Cod<Self>;

    /// The domain test population.
    fn domain_population(&self, cfg: &SweepConfig) -> Population<Dom<Self>>;

    /// The codomain test population; every element when the carrier is small.
    fn codomain_population(&self, _cfg: &SweepConfig) -> Population<Cod<Self>> {
        Population::exhaustive(self.codomain().elements())
    }

    /// Whether persistency is a theorem for this observer. When it is not,
    /// an empty witness search is inconclusive rather than a pass.
    fn expects_persistency(&self) -> bool {
        true
    }

    /// `r(mn)`.
    fn retract_product(&self, m: &Dom<Self>, n: &Dom<Self>) -> Cod<Self> {
        self.retract(&self.domain().mul(m, n))
    }

    /// `r(m ι(ω))` for every `ω`; `iotas[k] = ι(omegas[k])`.
    fn retract_right_row(&self, m: &Dom<Self>, _omegas: &[Cod<Self>], iotas: &[Dom<Self>]) -> Vec<Cod<Self>> {
        iotas.iter().map(|i| self.retract(&self.domain().mul(m, i))).collect()
    }

    /// `r(ι(ω) m)` for every `ω`.
    fn retract_left_row(&self, m: &Dom<Self>, _omegas: &[Cod<Self>], iotas: &[Dom<Self>]) -> Vec<Cod<Self>> {
        iotas.iter().map(|i| self.retract(&self.domain().mul(i, m))).collect()
    }

    /// `x ω y` in the codomain for every `ω`.
    fn codomain_sandwich_row(&self, x: &Cod<Self>, y: &Cod<Self>, omegas: &[Cod<Self>]) -> Vec<Cod<Self>> {
        omegas.iter().map(|w| self.codomain().mul3(x, w, y)).collect()
    }

    /// `r(m ι(ω) n)` for every `ω`.
    fn retract_sandwich_row(
        &self,
        m: &Dom<Self>,
        n: &Dom<Self>,
        _omegas: &[Cod<Self>],
        iotas: &[Dom<Self>],
    ) -> Vec<Cod<Self>> {
        iotas.iter().map(|i| self.retract(&self.domain().mul3(m, i, n))).collect()
    }
}

/// `p = (C_c(−), osupp) : Max ℂG → 𝒪(G)`.
///
/// `r(m ι(ω) n)` is evaluated as `⋃_{a∈ω} S_a` with
/// `S_a = ⋃ supp(b⋆δ_a⋆c)` over basis vectors `b` of `m` and `c` of `n`:
/// the span of a set has the union of the supports as its open support.
#[derive(Clone, Debug)]
pub struct CanonicalObserver {
    algebra: Powerspace,
    arrows: ArrowSetQuantale,
    principal: bool,
}

pub fn build_canonical_observer(g: Arc<FiniteGroupoid>) -> CanonicalObserver {
    CanonicalObserver {
        principal: structure_report(&g).principal,
        algebra: Powerspace::new(g.clone()),
        arrows: ArrowSetQuantale::new(g),
    }
}

impl CanonicalObserver {
    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        self.algebra.groupoid()
    }

    /// `b ⋆ δ_a`.
    fn right_delta(&self, b: &[GaussianRational], a: usize) -> Vec<GaussianRational> {
        convolve_coords(self.groupoid(), b, &delta(self.algebra.dim(), a))
    }

    /// `δ_a ⋆ b`.
    fn left_delta(&self, a: usize, b: &[GaussianRational]) -> Vec<GaussianRational> {
        convolve_coords(self.groupoid(), &delta(self.algebra.dim(), a), b)
    }

    fn arrows_used(omegas: &[ArrowSet]) -> ArrowSet {
        omegas.iter().fold(ArrowSet::EMPTY, |acc, w| acc.union(*w))
    }

    fn row_from_parts(parts: &[ArrowSet], omegas: &[ArrowSet]) -> Vec<ArrowSet> {
        omegas.iter().map(|w| w.ids().fold(ArrowSet::EMPTY, |acc, a| acc.union(parts[a]))).collect()
    }
}

fn delta(dim: usize, a: usize) -> Vec<GaussianRational> {
    let mut v = vec![GaussianRational::zero(); dim];
    v[a] = GaussianRational::one();
    v
}

impl ObserverMap for CanonicalObserver {
    type Domain = Powerspace;
    type Codomain = ArrowSetQuantale;

    fn domain(&self) -> &Powerspace {
        &self.algebra
    }
    fn codomain(&self) -> &ArrowSetQuantale {
        &self.arrows
    }
    fn iota(&self, w: &ArrowSet) -> Subspace {
        self.algebra.iota(*w)
    }
    fn retract(&self, m: &Subspace) -> ArrowSet {
        self.algebra.osupp(m)
    }
    fn domain_population(&self, cfg: &SweepConfig) -> Population<Subspace> {
        powerspace_population(&self.algebra, cfg)
    }
    fn codomain_population(&self, cfg: &SweepConfig) -> Population<ArrowSet> {
        arrow_set_population(self.groupoid(), cfg)
    }
    /// Persistent iff principal: principal with discrete orbits suffices, and
    /// every finite groupoid has discrete orbits.
    fn expects_persistency(&self) -> bool {
        self.principal
    }
    fn retract_product(&self, m: &Subspace, n: &Subspace) -> ArrowSet {
        self.algebra.osupp_product(m, n)
    }
    /// `UωV = ⋃_{a∈ω} U{a}V` by the elementwise definition of the product.
    fn codomain_sandwich_row(&self, x: &ArrowSet, y: &ArrowSet, omegas: &[ArrowSet]) -> Vec<ArrowSet> {
        let g = self.groupoid();
        let mut parts = vec![ArrowSet::EMPTY; self.algebra.dim()];
        for a in Self::arrows_used(omegas).ids() {
            parts[a] = g.product(g.product(*x, ArrowSet::singleton(a)), *y);
        }
        Self::row_from_parts(&parts, omegas)
    }
    fn retract_right_row(&self, m: &Subspace, omegas: &[ArrowSet], _iotas: &[Subspace]) -> Vec<ArrowSet> {
        let used = Self::arrows_used(omegas);
        let mut parts = vec![ArrowSet::EMPTY; self.algebra.dim()];
        for a in used.ids() {
            parts[a] = m.rows().iter().fold(ArrowSet::EMPTY, |acc, b| acc.union(support_of(&self.right_delta(b, a))));
        }
        Self::row_from_parts(&parts, omegas)
    }
    fn retract_left_row(&self, m: &Subspace, omegas: &[ArrowSet], _iotas: &[Subspace]) -> Vec<ArrowSet> {
        let used = Self::arrows_used(omegas);
        let mut parts = vec![ArrowSet::EMPTY; self.algebra.dim()];
        for a in used.ids() {
            parts[a] = m.rows().iter().fold(ArrowSet::EMPTY, |acc, b| acc.union(support_of(&self.left_delta(a, b))));
        }
        Self::row_from_parts(&parts, omegas)
    }
    fn retract_sandwich_row(
        &self,
        m: &Subspace,
        n: &Subspace,
        omegas: &[ArrowSet],
        _iotas: &[Subspace],
    ) -> Vec<ArrowSet> {
        let used = Self::arrows_used(omegas);
        let mut parts = vec![ArrowSet::EMPTY; self.algebra.dim()];
        if !m.is_zero() && !n.is_zero() {
            let ms: Vec<ArrowSet> = m.rows().iter().map(|b| support_of(b)).collect();
            let ns: Vec<ArrowSet> = n.rows().iter().map(|c| support_of(c)).collect();
            for a in used.ids() {
                let mut s = ArrowSet::EMPTY;
                for (b, &bs) in m.rows().iter().zip(&ms) {
                    for (c, &cs) in n.rows().iter().zip(&ns) {
                        s = s.union(sandwich_support(self.groupoid(), b, bs, Some(a), c, cs));
                    }
                }
                parts[a] = s;
            }
        }
        Self::row_from_parts(&parts, omegas)
    }
}

/// The base locale `↓e` of a unital quantale, as a subquantale with unit and top `e`.
#[derive(Clone, Debug)]
pub struct BaseLocale<Q: FiniteQuantale> {
    q: Arc<Q>,
    e: Q::Elem,
    elements: Vec<Q::Elem>,
}

impl<Q: FiniteQuantale> BaseLocale<Q> {
    /// `None` when `q` has no unit.
    pub fn of(q: Arc<Q>) -> Option<Self> {
        let e = q.unit()?;
        let elements = q.elements().into_iter().filter(|x| q.leq(x, &e)).collect();
        Some(Self { q, e, elements })
    }
}

impl<Q: FiniteQuantale> InvolutiveQuantale for BaseLocale<Q> {
    type Elem = Q::Elem;

    fn bottom(&self) -> Q::Elem {
        self.q.bottom()
    }
    fn top(&self) -> Q::Elem {
        self.e.clone()
    }
    fn join(&self, a: &Q::Elem, b: &Q::Elem) -> Q::Elem {
        self.q.join(a, b)
    }
    fn mul(&self, a: &Q::Elem, b: &Q::Elem) -> Q::Elem {
        self.q.mul(a, b)
    }
    fn star(&self, a: &Q::Elem) -> Q::Elem {
        self.q.star(a)
    }
    fn leq(&self, a: &Q::Elem, b: &Q::Elem) -> bool {
        self.q.leq(a, b)
    }
    fn unit(&self) -> Option<Q::Elem> {
        Some(self.e.clone())
    }
    fn describe(&self, a: &Q::Elem) -> Value {
        self.q.describe(a)
    }
}

impl<Q: FiniteQuantale> FiniteQuantale for BaseLocale<Q> {
    fn elements(&self) -> Vec<Q::Elem> {
        self.elements.clone()
    }
    fn meet(&self, a: &Q::Elem, b: &Q::Elem) -> Q::Elem {
        self.q.meet(a, b)
    }
}

/// `(inclusion, (−)∧e) : Q → ↓e`.
#[derive(Clone, Debug)]
pub struct LocalObserver<Q: FiniteQuantale> {
    q: Arc<Q>,
    base: BaseLocale<Q>,
}

/// The local observer of an inverse quantal frame; refuses anything else.
pub fn local_observer_of_iqf(
    q: Arc<FiniteInvolutiveQuantale>,
    exec: Exec,
) -> Result<LocalObserver<FiniteInvolutiveQuantale>> {
    let report = is_inverse_quantal_frame(&q, exec);
    if let Some(clause) = report.failed_clause() {
        return Err(Error::NotInverseQuantalFrame(clause.to_string()));
    }
    LocalObserver::new(q)
}

/// The local observer of `𝒪(G)`, which is an inverse quantal frame for every finite groupoid.
pub fn local_observer_of_groupoid(g: Arc<FiniteGroupoid>) -> LocalObserver<ArrowSetQuantale> {
    LocalObserver::new(Arc::new(ArrowSetQuantale::new(g))).expect("𝒪(G) is unital")
}

impl<Q: FiniteQuantale> LocalObserver<Q> {
    fn new(q: Arc<Q>) -> Result<Self> {
        let base = BaseLocale::of(q.clone()).ok_or_else(|| Error::NotInverseQuantalFrame("unital".into()))?;
        Ok(Self { q, base })
    }

    pub fn base(&self) -> &BaseLocale<Q> {
        &self.base
    }
}

impl<Q: FiniteQuantale> ObserverMap for LocalObserver<Q> {
    type Domain = Q;
    type Codomain = BaseLocale<Q>;

    fn domain(&self) -> &Q {
        &self.q
    }
    fn codomain(&self) -> &BaseLocale<Q> {
        &self.base
    }
    fn iota(&self, w: &Q::Elem) -> Q::Elem {
        w.clone()
    }
    fn retract(&self, m: &Q::Elem) -> Q::Elem {
        self.q.meet(m, &self.base.e)
    }
    fn domain_population(&self, _cfg: &SweepConfig) -> Population<Q::Elem> {
        Population::exhaustive(self.q.elements())
    }
    fn expects_persistency(&self) -> bool {
        false
    }
}

/// `ι = r = id` on a listable quantale.
#[derive(Clone, Debug)]
pub struct IdentityObserver<Q: FiniteQuantale> {
    q: Arc<Q>,
}

impl<Q: FiniteQuantale> IdentityObserver<Q> {
    pub fn new(q: Arc<Q>) -> Self {
        Self { q }
    }
}

impl<Q: FiniteQuantale> ObserverMap for IdentityObserver<Q> {
    type Domain = Q;
    type Codomain = Q;

    fn domain(&self) -> &Q {
        &self.q
    }
    fn codomain(&self) -> &Q {
        &self.q
    }
    fn iota(&self, w: &Q::Elem) -> Q::Elem {
        w.clone()
    }
    fn retract(&self, m: &Q::Elem) -> Q::Elem {
        m.clone()
    }
    fn domain_population(&self, _cfg: &SweepConfig) -> Population<Q::Elem> {
        Population::exhaustive(self.q.elements())
    }
}

/// `(ι₁∘ι₂, r₂∘r₁)` for `p₁ : M → Ω₁` and `p₂ : Ω₁ → Ω₂`.
#[derive(Clone, Debug)]
pub struct Composed<A, B> {
    first: A,
    second: B,
}

impl<A, B> Composed<A, B>
where
    A: ObserverMap,
    B: ObserverMap<Domain = A::Codomain>,
{
    pub fn new(first: A, second: B) -> Self {
        Self { first, second }
    }
}

/// `p₀ : Max ℂG → 𝒪(G₀)`: the canonical observer followed by `(−)∧e`.
pub fn base_observer(g: Arc<FiniteGroupoid>) -> Composed<CanonicalObserver, LocalObserver<ArrowSetQuantale>> {
    Composed::new(build_canonical_observer(g.clone()), local_observer_of_groupoid(g))
}

impl<A, B> ObserverMap for Composed<A, B>
where
    A: ObserverMap,
    B: ObserverMap<Domain = A::Codomain>,
{
    type Domain = A::Domain;
    type Codomain = B::Codomain;

    fn domain(&self) -> &A::Domain {
        self.first.domain()
    }
    fn codomain(&self) -> &B::Codomain {
        self.second.codomain()
    }
    fn iota(&self, w: &Cod<B>) -> Dom<A> {
        self.first.iota(&self.second.iota(w))
    }
    fn retract(&self, m: &Dom<A>) -> Cod<B> {
        self.second.retract(&self.first.retract(m))
    }
    fn domain_population(&self, cfg: &SweepConfig) -> Population<Dom<A>> {
        self.first.domain_population(cfg)
    }
    fn codomain_population(&self, cfg: &SweepConfig) -> Population<Cod<B>> {
        self.second.codomain_population(cfg)
    }
    fn expects_persistency(&self) -> bool {
        self.first.expects_persistency() && self.second.expects_persistency()
    }
    fn retract_product(&self, m: &Dom<A>, n: &Dom<A>) -> Cod<B> {
        self.second.retract(&self.first.retract_product(m, n))
    }
    fn retract_right_row(&self, m: &Dom<A>, omegas: &[Cod<B>], iotas: &[Dom<A>]) -> Vec<Cod<B>> {
        let inner: Vec<Cod<A>> = omegas.iter().map(|w| self.second.iota(w)).collect();
        self.first.retract_right_row(m, &inner, iotas).iter().map(|x| self.second.retract(x)).collect()
    }
    fn retract_left_row(&self, m: &Dom<A>, omegas: &[Cod<B>], iotas: &[Dom<A>]) -> Vec<Cod<B>> {
        let inner: Vec<Cod<A>> = omegas.iter().map(|w| self.second.iota(w)).collect();
        self.first.retract_left_row(m, &inner, iotas).iter().map(|x| self.second.retract(x)).collect()
    }
    fn retract_sandwich_row(&self, m: &Dom<A>, n: &Dom<A>, omegas: &[Cod<B>], iotas: &[Dom<A>]) -> Vec<Cod<B>> {
        let inner: Vec<Cod<A>> = omegas.iter().map(|w| self.second.iota(w)).collect();
        self.first.retract_sandwich_row(m, n, &inner, iotas).iter().map(|x| self.second.retract(x)).collect()
    }
}
