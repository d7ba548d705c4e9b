//! Finite discrete groupoids and their arrow-set quantales `𝒪(G) = P(G₁)`.
//!
//! Arrow ids are assigned in construction order and are what witnesses and
//! serializations refer to. `compose(g, h)` is defined iff `d(g) = r(h)`.
//!
//! Every topology here is discrete, so the structure maps are open and
//! étale for free, and a groupoid is topologically principal exactly when it
//! is principal (the only dense subset of a discrete space is the whole
//! space). Orbits are likewise automatically discrete.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{unflatten, Exec};
use crate::finite_quantale::{FiniteInvolutiveQuantale, FiniteSupLattice, DEFAULT_THRESHOLD};
use crate::measurement::{FiniteQuantale, InvolutiveQuantale};
use crate::report::{Check, Report};

/// Arrow sets are 128-bit masks.
pub const MAX_ARROWS: usize = 128;

/// A subset of `G₁` (or of `G₀`), bit `k` for id `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArrowSet(pub u128);

impl ArrowSet {
    pub const EMPTY: ArrowSet = ArrowSet(0);

    pub fn singleton(a: usize) -> Self {
        ArrowSet(1 << a)
    }

    pub fn from_ids(ids: impl IntoIterator<Item = usize>) -> Self {
        ArrowSet(ids.into_iter().fold(0, |m, a| m | 1 << a))
    }

    /// The first `n` ids.
    pub fn all(n: usize) -> Self {
        if n >= 128 {
            ArrowSet(u128::MAX)
        } else {
            ArrowSet((1 << n) - 1)
        }
    }

    pub fn contains(self, a: usize) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: usize) {
        self.0 |= 1 << a;
    }

    pub fn union(self, other: Self) -> Self {
        ArrowSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ArrowSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn ids(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        })
    }
}

impl fmt::Debug for ArrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub dom: usize,
    pub cod: usize,
}

/// A finite group by its multiplication table; element `0` need not be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl Group {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if let Some((a, b)) = (0..n * n).map(|k| (k / n, k % n)).find(|&(a, b)| table[a][b] >= n) {
            return Err(Error::InvalidGroup(format!("closure fails at ({a}, {b})")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(b);
        }
        let names = (0..n)
            .map(|a| match (a == identity, n) {
                (true, _) => "e".to_string(),
                (false, 2) => "g".to_string(),
                _ => format!("g{a}"),
            })
            .collect();
        Ok(Self { table, identity, inverse, names })
    }

    /// `ℤ_n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// The Klein four-group `ℤ₂×ℤ₂` as bit pairs under xor.
    pub fn klein() -> Self {
        Self::from_table((0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()).expect("valid group")
    }

    /// `S₃` on permutations of `{0,1,2}` listed lexicographically; `ab = a∘b`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let table = (0..6).map(|a| (0..6).map(|b| idx([0, 1, 2].map(|x| perms[a][perms[b][x]]))).collect()).collect();
        Self::from_table(table).expect("valid group")
    }

    /// `Z<n>`, `V4` or `S3`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "V4" => Ok(Self::klein()),
            "S3" => Ok(Self::symmetric3()),
            _ => {
                let n: usize = name
                    .strip_prefix('Z')
                    .and_then(|s| s.parse().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown group `{name}`")))?;
                Self::cyclic(n)
            }
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    arrows: Vec<Arrow>,
    unit_of: Vec<usize>,
    inverse: Vec<usize>,
    /// `compose[g·n + h]`, present iff `d(g) = r(h)`.
    compose: Vec<Option<u32>>,
    labels: Vec<String>,
    /// Arrows with a given codomain, per object.
    with_cod: Vec<ArrowSet>,
}

impl fmt::Debug for FiniteGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroupoid")
            .field("objects", &self.objects)
            .field("arrows", &self.labels)
            .finish_non_exhaustive()
    }
}

impl FiniteGroupoid {
    /// Checks only shapes and ranges; the axioms are left to [`verify_groupoid_axioms`].
    pub fn from_parts(
        objects: usize,
        arrows: Vec<Arrow>,
        unit_of: Vec<usize>,
        inverse: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = arrows.len();
        if n > MAX_ARROWS {
            return Err(Error::TooLarge { required: n as u128, threshold: MAX_ARROWS });
        }
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        if let Some(a) = arrows.iter().position(|a| a.dom >= objects || a.cod >= objects) {
            return bad(format!("arrow {a} has an endpoint out of range"));
        }
        if unit_of.len() != objects || unit_of.iter().any(|&u| u >= n) {
            return bad("unit map must send each object to an arrow".into());
        }
        if inverse.len() != n || inverse.iter().any(|&i| i >= n) {
            return bad("inverse map must send each arrow to an arrow".into());
        }
        if labels.len() != n {
            return bad("one label per arrow".into());
        }
        let mut table = vec![None; n * n];
        for g in 0..n {
            for h in 0..n {
                if arrows[g].dom == arrows[h].cod {
                    let gh = compose(g, h);
                    if gh >= n {
                        return bad(format!("composite of ({g}, {h}) out of range"));
                    }
                    table[g * n + h] = Some(gh as u32);
                }
            }
        }
        let mut with_cod = vec![ArrowSet::EMPTY; objects];
        for (k, a) in arrows.iter().enumerate() {
            with_cod[a.cod].insert(k);
        }
        Ok(Self { objects, arrows, unit_of, inverse, compose: table, labels, with_cod })
    }

    /// Like [`from_parts`](Self::from_parts) but refuses tables that violate an axiom.
    fn checked(self) -> Result<Self> {
        let report = verify_groupoid_axioms(&self, Exec::Sequential);
        let failure = report
            .failures()
            .next()
            .map(|c| format!("{} fails at {}", c.law, c.witness.clone().unwrap_or(Value::Null)));
        match failure {
            None => Ok(self),
            Some(m) => Err(Error::InvalidGroupoid(m)),
        }
    }

    /// `pair(n)`: arrow `(x, y)` has id `x·n + y`, `d = y`, `r = x`, and `(x,y)(y,z) = (x,z)`.
    pub fn pair(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroupoid("pair groupoid needs at least one object".into()));
        }
        let arrows = (0..n * n).map(|k| Arrow { dom: k % n, cod: k / n }).collect();
        Self::from_parts(
            n,
            arrows,
            (0..n).map(|x| x * n + x).collect(),
            (0..n * n).map(|k| (k % n) * n + k / n).collect(),
            |g, h| (g / n) * n + h % n,
            (0..n * n).map(|k| format!("({},{})", k / n, k % n)).collect(),
        )
    }

    /// A group as a one-object groupoid; arrow ids are group elements.
    pub fn group(gr: &Group) -> Result<Self> {
        let n = gr.order();
        Self::from_parts(
            1,
            vec![Arrow { dom: 0, cod: 0 }; n],
            vec![gr.identity()],
            (0..n).map(|a| gr.inverse(a)).collect(),
            |g, h| gr.mul(g, h),
            gr.names.clone(),
        )
    }

    /// `Γ⋉X` for the left action `act[α][x] = α·x`: arrow `(α, x)` has id
    /// `α·|X| + x`, `d = x`, `r = α·x`.
    pub fn action(gr: &Group, points: usize, act: &[Vec<usize>]) -> Result<Self> {
        let m = points;
        if act.len() != gr.order() || act.iter().any(|r| r.len() != m || r.iter().any(|&y| y >= m)) {
            return Err(Error::InvalidAction(format!(
                "action table must be {}×{m} with entries below {m}",
                gr.order()
            )));
        }
        if let Some(x) = (0..m).find(|&x| act[gr.identity()][x] != x) {
            return Err(Error::InvalidAction(format!("identity moves point {x}")));
        }
        for a in 0..gr.order() {
            for b in 0..gr.order() {
                for x in 0..m {
                    if act[gr.mul(a, b)][x] != act[a][act[b][x]] {
                        return Err(Error::InvalidAction(format!("compatibility fails at ({a}, {b}, {x})")));
                    }
                }
            }
        }
        let n = gr.order() * m;
        let split = |k: usize| (k / m, k % m);
        Self::from_parts(
            m,
            (0..n)
                .map(|k| {
                    let (a, x) = split(k);
                    Arrow { dom: x, cod: act[a][x] }
                })
                .collect(),
            (0..m).map(|x| gr.identity() * m + x).collect(),
            (0..n)
                .map(|k| {
                    let (a, x) = split(k);
                    gr.inverse(a) * m + act[a][x]
                })
                .collect(),
            |g, h| {
                let ((a, _), (b, x)) = (split(g), split(h));
                gr.mul(a, b) * m + x
            },
            (0..n)
                .map(|k| {
                    let (a, x) = split(k);
                    format!("({},{x})", gr.names[a])
                })
                .collect(),
        )
    }

    /// `ℤ₂` acting on `{0, 1}` by the swap.
    pub fn z2_swap() -> Self {
        Self::action(&Group::cyclic(2).expect("Z2"), 2, &[vec![0, 1], vec![1, 0]]).expect("valid action")
    }

    /// `G ⊔ H`: objects and arrows of `H` are shifted past those of `G`.
    pub fn disjoint_union(g: &Self, h: &Self) -> Result<Self> {
        let (ng, og) = (g.arrow_count(), g.objects);
        let shift = |a: &Arrow| Arrow { dom: a.dom + og, cod: a.cod + og };
        let arrows = g.arrows.iter().copied().chain(h.arrows.iter().map(shift)).collect();
        let units = g.unit_of.iter().copied().chain(h.unit_of.iter().map(|&u| u + ng)).collect();
        let inverse = g.inverse.iter().copied().chain(h.inverse.iter().map(|&i| i + ng)).collect();
        let labels = g.labels.iter().map(|l| format!("0{l}")).chain(h.labels.iter().map(|l| format!("1{l}"))).collect();
        Self::from_parts(
            og + h.objects,
            arrows,
            units,
            inverse,
            |a, b| {
                if a < ng {
                    g.compose(a, b).expect("composable within the left summand")
                } else {
                    h.compose(a - ng, b - ng).expect("composable within the right summand") + ng
                }
            },
            labels,
        )
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, a: usize) -> Arrow {
        self.arrows[a]
    }

    pub fn dom(&self, a: usize) -> usize {
        self.arrows[a].dom
    }

    pub fn cod(&self, a: usize) -> usize {
        self.arrows[a].cod
    }

    pub fn unit_of(&self, x: usize) -> usize {
        self.unit_of[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `gh`, defined iff `d(g) = r(h)`.
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose[g * self.arrows.len() + h].map(|x| x as usize)
    }

    /// Arrows whose codomain is `x`.
    pub fn arrows_with_cod(&self, x: usize) -> ArrowSet {
        self.with_cod[x]
    }

    pub fn all_arrows(&self) -> ArrowSet {
        ArrowSet::all(self.arrow_count())
    }

    /// `u(G₀)`.
    pub fn units(&self) -> ArrowSet {
        ArrowSet::from_ids(self.unit_of.iter().copied())
    }

    /// `UV = {uv | u ∈ U, v ∈ V, d(u) = r(v)}`.
    pub fn product(&self, u: ArrowSet, v: ArrowSet) -> ArrowSet {
        let mut out = ArrowSet::EMPTY;
        for g in u.ids() {
            for h in v.intersection(self.with_cod[self.dom(g)]).ids() {
                out.insert(self.compose(g, h).expect("typed pair"));
            }
        }
        out
    }

    pub fn inverse_set(&self, u: ArrowSet) -> ArrowSet {
        ArrowSet::from_ids(u.ids().map(|g| self.inverse(g)))
    }

    /// `d(U)` as an object set.
    pub fn dom_set(&self, u: ArrowSet) -> ArrowSet {
        ArrowSet::from_ids(u.ids().map(|g| self.dom(g)))
    }

    /// `r(U)` as an object set.
    pub fn cod_set(&self, u: ArrowSet) -> ArrowSet {
        ArrowSet::from_ids(u.ids().map(|g| self.cod(g)))
    }

    /// `d` and `r` are injective on `U`.
    pub fn is_bisection(&self, u: ArrowSet) -> bool {
        self.dom_set(u).len() == u.len() && self.cod_set(u).len() == u.len()
    }

    /// An isomorphism onto `pair(n)` (object `x` ↦ `x`), if the groupoid is
    /// principal and transitive.
    pub fn pair_coordinates(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.objects;
        if self.arrow_count() != n * n {
            return Err(Error::NotPairGroupoid);
        }
        let coords: Vec<(usize, usize)> = self.arrows.iter().map(|a| (a.cod, a.dom)).collect();
        let mut seen = vec![false; n * n];
        for &(x, y) in &coords {
            if std::mem::replace(&mut seen[x * n + y], true) {
                return Err(Error::NotPairGroupoid);
            }
        }
        Ok(coords)
    }

    pub fn to_json(&self) -> GroupoidJson {
        let n = self.arrow_count();
        GroupoidJson {
            objects: self.objects,
            arrows: self.arrows.clone(),
            compose: (0..n * n).filter_map(|k| self.compose(k / n, k % n).map(|gh| [k / n, k % n, gh])).collect(),
            inverse: self.inverse.clone(),
        }
    }

    /// Parses the wire form without checking the axioms. Units are the
    /// idempotent arrows at each object.
    pub fn from_json_unchecked(j: &GroupoidJson) -> Result<Self> {
        let n = j.arrows.len();
        if n > MAX_ARROWS {
            return Err(Error::TooLarge { required: n as u128, threshold: MAX_ARROWS });
        }
        let mut table = vec![None; n * n];
        for &[g, h, gh] in &j.compose {
            if g >= n || h >= n || gh >= n {
                return Err(Error::InvalidGroupoid(format!("composition entry [{g},{h},{gh}] out of range")));
            }
            if j.arrows[g].dom != j.arrows[h].cod {
                return Err(Error::InvalidGroupoid(format!("composition entry [{g},{h},{gh}] is not composable")));
            }
            if table[g * n + h].replace(gh).is_some() {
                return Err(Error::InvalidGroupoid(format!("pair ({g},{h}) composed twice")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                if j.arrows[g].dom == j.arrows[h].cod && table[g * n + h].is_none() {
                    return Err(Error::InvalidGroupoid(format!("composite of ({g},{h}) is missing")));
                }
            }
        }
        let units = (0..j.objects)
            .map(|x| {
                (0..n)
                    .find(|&a| j.arrows[a] == Arrow { dom: x, cod: x } && table[a * n + a] == Some(a))
                    .ok_or_else(|| Error::InvalidGroupoid(format!("object {x} has no identity arrow")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(
            j.objects,
            j.arrows.clone(),
            units,
            j.inverse.clone(),
            |g, h| table[g * n + h].expect("checked above"),
            (0..n).map(|a| a.to_string()).collect(),
        )
    }

    pub fn from_json(j: &GroupoidJson) -> Result<Self> {
        Self::from_json_unchecked(j)?.checked()
    }

    /// Replaces one composition entry; for building corrupted inputs.
    pub fn with_composite(&self, g: usize, h: usize, gh: usize) -> Result<Self> {
        let n = self.arrow_count();
        if self.compose(g, h).is_none() || gh >= n {
            return Err(Error::InvalidGroupoid(format!("({g},{h}) is not a composable pair")));
        }
        let mut out = self.clone();
        out.compose[g * n + h] = Some(gh as u32);
        Ok(out)
    }
}

/// Wire form `{ "objects", "arrows": [{"dom","cod"}], "compose": [[g,h,gh]], "inverse": [int] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: usize,
    pub arrows: Vec<Arrow>,
    pub compose: Vec<[usize; 3]>,
    pub inverse: Vec<usize>,
}

/// The four axiom families, each with its least failing tuple.
pub fn verify_groupoid_axioms(g: &FiniteGroupoid, exec: Exec) -> Report {
    let n = g.arrow_count();
    let mut r = Report::new("groupoid", json!({"kind": "exhaustive", "arrows": n, "objects": g.object_count()}), 0);
    r.push(Check::from_witness(
        "d(x) = x and r(x) = x on units",
        (0..g.object_count()).find_map(|x| {
            let u = g.unit_of(x);
            (g.dom(u) != x || g.cod(u) != x).then(|| json!({"object": x, "unit": u}))
        }),
    ));
    r.push(Check::from_witness(
        "composite typing d(gh) = d(h), r(gh) = r(g)",
        exec.find_first(n * n, |k| {
            let [a, b] = unflatten(k, [n; 2]);
            let ab = g.compose(a, b)?;
            (g.dom(ab) != g.dom(b) || g.cod(ab) != g.cod(a)).then(|| json!({"g": a, "h": b, "gh": ab}))
        }),
    ));
    r.push(Check::from_witness(
        "associativity g(hk) = (gh)k",
        exec.find_first(n * n * n, |k| {
            let [a, b, c] = unflatten(k, [n; 3]);
            let ab = g.compose(a, b)?;
            let bc = g.compose(b, c)?;
            let (l, rr) = (g.compose(ab, c), g.compose(a, bc));
            (l != rr || l.is_none()).then(|| json!({"g": a, "h": b, "k": c}))
        }),
    ));
    r.push(Check::from_witness(
        "unit laws g d(g) = g = r(g) g",
        exec.find_first(n, |a| {
            let right = g.compose(a, g.unit_of(g.dom(a)));
            let left = g.compose(g.unit_of(g.cod(a)), a);
            (right != Some(a) || left != Some(a)).then(|| json!({"g": a}))
        }),
    ));
    r.push(Check::from_witness(
        "inverse laws g⁻¹g = d(g), gg⁻¹ = r(g)",
        exec.find_first(n, |a| {
            let i = g.inverse(a);
            let ok = g.compose(i, a) == Some(g.unit_of(g.dom(a))) && g.compose(a, i) == Some(g.unit_of(g.cod(a)));
            (!ok).then(|| json!({"g": a, "inverse": i}))
        }),
    ));
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub principal: bool,
    /// Equal to `principal` for discrete groupoids.
    pub topologically_principal: bool,
    /// Arrow ids of `hom(x, x)`, per object.
    pub isotropy: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
    /// Always true: `u(G₀)` is open in a discrete space.
    pub etale: bool,
}

pub fn structure_report(g: &FiniteGroupoid) -> StructureReport {
    let isotropy: Vec<Vec<usize>> = (0..g.object_count())
        .map(|x| (0..g.arrow_count()).filter(|&a| g.dom(a) == x && g.cod(a) == x).collect())
        .collect();
    let principal = isotropy.iter().all(|i| i.len() == 1);
    let mut orbit_of = vec![usize::MAX; g.object_count()];
    let mut orbits = Vec::new();
    for x in 0..g.object_count() {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let members: Vec<usize> =
            (0..g.object_count()).filter(|&y| (0..g.arrow_count()).any(|a| g.dom(a) == x && g.cod(a) == y)).collect();
        for &y in &members {
            orbit_of[y] = id;
        }
        orbits.push(members);
    }
    StructureReport { principal, topologically_principal: principal, isotropy, orbits, etale: true }
}

/// All local bisections, ascending by mask.
pub fn local_bisections(g: &FiniteGroupoid) -> Vec<ArrowSet> {
    fn extend(g: &FiniteGroupoid, next: usize, current: ArrowSet, doms: u128, cods: u128, out: &mut Vec<ArrowSet>) {
        if next == g.arrow_count() {
            out.push(current);
            return;
        }
        extend(g, next + 1, current, doms, cods, out);
        let (d, c) = (g.dom(next), g.cod(next));
        if doms >> d & 1 == 0 && cods >> c & 1 == 0 {
            let mut with = current;
            with.insert(next);
            extend(g, next + 1, with, doms | 1 << d, cods | 1 << c, out);
        }
    }
    let mut out = Vec::new();
    extend(g, 0, ArrowSet::EMPTY, 0, 0, &mut out);
    out.sort_unstable();
    out
}

/// `𝒪(G)` materialized on all `2^|G₁|` arrow sets; element index = mask.
pub fn quantale_of_groupoid(g: &FiniteGroupoid, threshold: usize) -> Result<FiniteInvolutiveQuantale> {
    let k = g.arrow_count();
    let n = (k < 64)
        .then(|| 1usize << k)
        .filter(|&n| n <= threshold)
        .ok_or(Error::TooLarge { required: if k < 127 { 1u128 << k } else { u128::MAX }, threshold })?;
    let lattice = FiniteSupLattice::from_fn_with_threshold(n, threshold, |a, b| a & !b == 0)?;
    let mask = |a: usize| ArrowSet(a as u128);
    FiniteInvolutiveQuantale::from_lattice(
        lattice,
        |a, b| g.product(mask(a), mask(b)).0 as usize,
        |a| g.inverse_set(mask(a)).0 as usize,
        Some(g.units().0 as usize),
    )
}

/// `𝒪(G)` as an involutive quantale on arrow sets, never materialized.
#[derive(Clone, Debug)]
pub struct ArrowSetQuantale {
    groupoid: Arc<FiniteGroupoid>,
}

impl ArrowSetQuantale {
    pub fn new(groupoid: Arc<FiniteGroupoid>) -> Self {
        Self { groupoid }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    /// `2^|G₁|`, saturating.
    pub fn element_count(&self) -> u128 {
        let k = self.groupoid.arrow_count();
        if k >= 127 {
            u128::MAX
        } else {
            1 << k
        }
    }
}

impl InvolutiveQuantale for ArrowSetQuantale {
    type Elem = ArrowSet;

    fn bottom(&self) -> ArrowSet {
        ArrowSet::EMPTY
    }
    fn top(&self) -> ArrowSet {
        self.groupoid.all_arrows()
    }
    fn join(&self, a: &ArrowSet, b: &ArrowSet) -> ArrowSet {
        a.union(*b)
    }
    fn mul(&self, a: &ArrowSet, b: &ArrowSet) -> ArrowSet {
        self.groupoid.product(*a, *b)
    }
    fn star(&self, a: &ArrowSet) -> ArrowSet {
        self.groupoid.inverse_set(*a)
    }
    fn leq(&self, a: &ArrowSet, b: &ArrowSet) -> bool {
        a.is_subset(*b)
    }
    fn unit(&self) -> Option<ArrowSet> {
        Some(self.groupoid.units())
    }
    fn describe(&self, a: &ArrowSet) -> Value {
        json!(a.ids().map(|g| self.groupoid.label(g)).collect::<Vec<_>>())
    }
    fn partial_unit_failure(&self, b: &ArrowSet, s: &ArrowSet) -> Option<&'static str> {
        if *b == self.groupoid.units() {
            return (!self.groupoid.is_bisection(*s)).then_some("ss* ≤ b");
        }
        let st = self.star(s);
        if !self.leq(&self.mul(s, &st), b) {
            return Some("ss* ≤ b");
        }
        if !self.leq(&self.mul(&st, s), b) {
            return Some("s*s ≤ b");
        }
        if !self.leq(&self.mul(s, b), s) {
            return Some("sb ≤ s");
        }
        (!self.leq(&self.mul(b, s), s)).then_some("bs ≤ s")
    }
}

impl FiniteQuantale for ArrowSetQuantale {
    /// Every arrow set by mask; refuses carriers above the default threshold.
    fn elements(&self) -> Vec<ArrowSet> {
        let count = self.element_count();
        assert!(count <= DEFAULT_THRESHOLD as u128, "refusing to list {count} arrow sets");
        (0..count).map(ArrowSet).collect()
    }
    fn meet(&self, a: &ArrowSet, b: &ArrowSet) -> ArrowSet {
        a.intersection(*b)
    }
    fn partial_units(&self) -> Vec<ArrowSet> {
        local_bisections(&self.groupoid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_two_shape() {
        let g = FiniteGroupoid::pair(2).unwrap();
        assert_eq!((g.object_count(), g.arrow_count()), (2, 4));
        assert!(verify_groupoid_axioms(&g, Exec::Sequential).passed());
        // (0,1)(1,0) = (0,0)
        assert_eq!(g.compose(1, 2), Some(0));
        assert_eq!(g.compose(1, 1), None);
    }

    #[test]
    fn bisection_counts() {
        assert_eq!(local_bisections(&FiniteGroupoid::pair(2).unwrap()).len(), 7);
        assert_eq!(local_bisections(&FiniteGroupoid::pair(3).unwrap()).len(), 34);
        let z2 = FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap();
        assert_eq!(local_bisections(&z2), vec![ArrowSet(0), ArrowSet(1), ArrowSet(2)]);
    }

    #[test]
    fn action_groupoid_is_principal() {
        let g = FiniteGroupoid::z2_swap();
        assert_eq!(g.arrow_count(), 4);
        assert!(verify_groupoid_axioms(&g, Exec::Sequential).passed());
        let s = structure_report(&g);
        assert!(s.principal);
        assert_eq!(s.orbits, vec![vec![0, 1]]);
    }

    #[test]
    fn invalid_tables_are_named() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(Group::from_table(bad), Err(Error::InvalidGroup(_))));
        let z2 = Group::cyclic(2).unwrap();
        let err = FiniteGroupoid::action(&z2, 2, &[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert_eq!(err, Error::InvalidAction("identity moves point 0".into()));
    }

    #[test]
    fn s3_is_nonabelian() {
        let s3 = Group::symmetric3();
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    }
}
