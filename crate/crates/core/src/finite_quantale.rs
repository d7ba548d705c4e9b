//! Finite involutive quantales given by tables.
//!
//! Elements are indices `0..n`. The order is supplied; joins and meets are
//! derived from it once at construction, and a missing bound is an error.
//! Every algebraic law is decided by exhaustive enumeration, with witnesses
//! reported as the lexicographically least failing tuple.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exec::{tuple_count, unflatten, Exec};
use crate::measurement::{FiniteQuantale, InvolutiveQuantale};
use crate::report::{Check, Report};

/// Largest carrier that is materialized and swept exhaustively.
pub const DEFAULT_THRESHOLD: usize = 4096;

/// Dense bitset row over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }
    fn get(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSupLattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteSupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSupLattice").field("n", &self.n).finish_non_exhaustive()
    }
}

impl FiniteSupLattice {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        if leq.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("order matrix is not square".into()));
        }
        Self::from_fn(n, |a, b| leq[a][b])
    }

    /// Builds the lattice of the order `leq(a, b)` on `0..n`.
    pub fn from_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        Self::from_fn_with_threshold(n, DEFAULT_THRESHOLD, leq)
    }

    pub fn from_fn_with_threshold(n: usize, threshold: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("a lattice has at least one element".into()));
        }
        if n > threshold {
            return Err(Error::TooLarge { required: n as u128, threshold });
        }
        let table: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        let mut up = vec![Bits::new(n); n];
        let mut down = vec![Bits::new(n); n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] {
                    up[a].set(b);
                    down[b].set(a);
                }
            }
        }
        for a in 0..n {
            if !table[a * n + a] {
                return Err(Error::NotPartialOrder(format!("reflexivity fails at {a}")));
            }
            for b in up[a].iter() {
                if b != a && table[b * n + a] {
                    return Err(Error::NotPartialOrder(format!("antisymmetry fails at ({a}, {b})")));
                }
                if !up[b].subset_of(&up[a]) {
                    let c = up[b].iter().find(|&c| !up[a].get(c)).unwrap_or(b);
                    return Err(Error::NotPartialOrder(format!("transitivity fails at ({a}, {b}, {c})")));
                }
            }
        }
        let down_count: Vec<u32> = down.iter().map(Bits::count).collect();
        let up_count: Vec<u32> = up.iter().map(Bits::count).collect();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let ub = up[a].and(&up[b]);
                let j = ub
                    .iter()
                    .min_by_key(|&u| down_count[u])
                    .filter(|&j| ub.subset_of(&up[j]))
                    .ok_or(Error::MissingBound(a, b, "join"))?;
                let lb = down[a].and(&down[b]);
                let m = lb
                    .iter()
                    .min_by_key(|&l| up_count[l])
                    .filter(|&m| lb.subset_of(&down[m]))
                    .ok_or(Error::MissingBound(a, b, "meet"))?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        let bottom = (0..n).find(|&a| up_count[a] as usize == n).expect("finite lattice has a bottom");
        let top = (0..n).find(|&a| down_count[a] as usize == n).expect("finite lattice has a top");
        Ok(Self { n, leq: table, join, meet, bottom, top })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        Self::from_fn(n, |a, b| a <= b)
    }

    /// Subsets of `k` atoms, indexed by bitmask.
    pub fn powerset(k: u32) -> Result<Self> {
        let n = 1usize.checked_shl(k).ok_or(Error::TooLarge { required: u128::MAX, threshold: DEFAULT_THRESHOLD })?;
        Self::from_fn(n, |a, b| a & !b == 0)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b] as usize
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        self.leq.chunks(self.n).map(<[bool]>::to_vec).collect()
    }

    /// Elements below `a`, ascending.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.leq(x, a)).collect()
    }

    /// First `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self, exec: Exec) -> Option<[usize; 3]> {
        let n = self.n;
        exec.find_first(n * n * n, |k| {
            let [x, y, z] = unflatten(k, [n; 3]);
            let lhs = self.meet(x, self.join(y, z));
            let rhs = self.join(self.meet(x, y), self.meet(x, z));
            (lhs != rhs).then_some([x, y, z])
        })
    }
}

/// An order isomorphism `a → b` as an index map, if one exists.
pub fn order_isomorphism(a: &FiniteSupLattice, b: &FiniteSupLattice) -> Option<Vec<usize>> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let sig = |l: &FiniteSupLattice, x: usize| {
        let below = (0..n).filter(|&y| l.leq(y, x)).count();
        let above = (0..n).filter(|&y| l.leq(x, y)).count();
        (below, above)
    };
    let sa: Vec<_> = (0..n).map(|x| sig(a, x)).collect();
    let sb: Vec<_> = (0..n).map(|x| sig(b, x)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| sa[x]);
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        k: usize,
        order: &[usize],
        a: &FiniteSupLattice,
        b: &FiniteSupLattice,
        sa: &[(usize, usize)],
        sb: &[(usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(k) else { return true };
        for y in 0..b.size() {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            let consistent =
                order[..k].iter().all(|&p| a.leq(p, x) == b.leq(map[p], y) && a.leq(x, p) == b.leq(y, map[p]));
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if extend(k + 1, order, a, b, sa, sb, map, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    extend(0, &order, a, b, &sa, &sb, &mut map, &mut used).then_some(map)
}

/// A finite involutive quantale: lattice, multiplication table, involution and optional unit.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteInvolutiveQuantale {
    lattice: FiniteSupLattice,
    mult: Vec<u32>,
    inv: Vec<u32>,
    unit: Option<usize>,
}

impl fmt::Debug for FiniteInvolutiveQuantale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteInvolutiveQuantale")
            .field("n", &self.size())
            .field("unit", &self.unit)
            .finish_non_exhaustive()
    }
}

impl FiniteInvolutiveQuantale {
    /// Builds from explicit tables; indices are range-checked, laws are not.
    pub fn from_tables(
        leq: Vec<Vec<bool>>,
        mult: Vec<Vec<usize>>,
        inv: Vec<usize>,
        unit: Option<usize>,
    ) -> Result<Self> {
        let n = leq.len();
        if mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed(format!("multiplication table must be {n}×{n}")));
        }
        if inv.len() != n {
            return Err(Error::Malformed(format!("involution must list {n} entries")));
        }
        let lattice = FiniteSupLattice::new(leq)?;
        Self::from_lattice(lattice, |a, b| mult[a][b], |a| inv[a], unit)
    }

    pub fn from_lattice(
        lattice: FiniteSupLattice,
        mult: impl Fn(usize, usize) -> usize,
        inv: impl Fn(usize) -> usize,
        unit: Option<usize>,
    ) -> Result<Self> {
        let n = lattice.size();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let p = mult(a, b);
                if p >= n {
                    return Err(Error::Malformed(format!("product {a}·{b} = {p} out of range")));
                }
                table.push(p as u32);
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let s = inv(a);
            if s >= n {
                return Err(Error::Malformed(format!("involution of {a} = {s} out of range")));
            }
            inverse.push(s as u32);
        }
        if let Some(e) = unit {
            if e >= n {
                return Err(Error::Malformed(format!("unit {e} out of range")));
            }
        }
        Ok(Self { lattice, mult: table, inv: inverse, unit })
    }

    /// A lattice with `ab = a ∧ b`, trivial involution and unit `1`.
    pub fn locale(lattice: FiniteSupLattice) -> Self {
        let top = lattice.top();
        let meets = lattice.meet.clone();
        let n = lattice.size();
        Self { lattice, mult: meets, inv: (0..n as u32).collect(), unit: Some(top) }
    }

    pub fn trivial() -> Self {
        Self::locale(FiniteSupLattice::chain(1).expect("one-element chain"))
    }

    /// Binary relations on `k` points under composition; element `R` is the
    /// bitmask with bit `x·k + y` set iff `(x, y) ∈ R`.
    pub fn relations(k: usize) -> Result<Self> {
        let bits = k * k;
        let n = 1usize
            .checked_shl(bits as u32)
            .filter(|&n| n <= DEFAULT_THRESHOLD && bits < 64)
            .ok_or(Error::TooLarge { required: 1u128 << bits.min(127), threshold: DEFAULT_THRESHOLD })?;
        let lattice = FiniteSupLattice::from_fn(n, |a, b| a & !b == 0)?;
        let compose = |r: usize, s: usize| {
            let mut out = 0usize;
            for x in 0..k {
                for z in 0..k {
                    if r >> (x * k + z) & 1 == 1 {
                        for y in 0..k {
                            if s >> (z * k + y) & 1 == 1 {
                                out |= 1 << (x * k + y);
                            }
                        }
                    }
                }
            }
            out
        };
        let reverse =
            |r: usize| (0..bits).filter(|&b| r >> b & 1 == 1).fold(0, |acc, b| acc | 1 << ((b % k) * k + b / k));
        let diagonal = (0..k).fold(0, |acc, x| acc | 1 << (x * k + x));
        Self::from_lattice(lattice, compose, reverse, Some(diagonal))
    }

    pub fn lattice(&self) -> &FiniteSupLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.size() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lattice.meet(a, b)
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    /// `a a* a`.
    pub fn sandwich(&self, a: usize) -> usize {
        self.mul(self.mul(a, self.inv(a)), a)
    }

    /// The subquantale on `elements`, reindexed in the given order.
    /// Fails if the subset is not closed under the operations or is not a lattice.
    pub fn restrict(&self, elements: &[usize], unit: Option<usize>) -> Result<(Self, Vec<usize>)> {
        let pos = |x: usize| elements.iter().position(|&y| y == x);
        let closed =
            |x: usize, what: &str| pos(x).ok_or_else(|| Error::Malformed(format!("subset is not closed under {what}")));
        let m = elements.len();
        let lattice = FiniteSupLattice::from_fn(m, |a, b| self.leq(elements[a], elements[b]))?;
        let mut mult = vec![0u32; m * m];
        for a in 0..m {
            for b in 0..m {
                mult[a * m + b] = closed(self.mul(elements[a], elements[b]), "multiplication")? as u32;
            }
        }
        let inv = elements
            .iter()
            .map(|&x| closed(self.inv(x), "involution").map(|k| k as u32))
            .collect::<Result<Vec<_>>>()?;
        let unit = unit.map(|e| closed(e, "unit")).transpose()?;
        Ok((Self { lattice, mult, inv, unit }, elements.to_vec()))
    }

    pub fn to_json(&self) -> QuantaleJson {
        let n = self.size();
        QuantaleJson {
            n,
            leq: (0..n).map(|a| (0..n).map(|b| u8::from(self.leq(a, b))).collect()).collect(),
            mult: (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect(),
            inv: (0..n).map(|a| self.inv(a)).collect(),
            unit: self.unit,
        }
    }

    pub fn from_json(j: &QuantaleJson) -> Result<Self> {
        if j.leq.len() != j.n {
            return Err(Error::Malformed(format!("`leq` must have {} rows", j.n)));
        }
        let mut leq = Vec::with_capacity(j.n);
        for row in &j.leq {
            leq.push(
                row.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(Error::Malformed(format!("`leq` entries are 0 or 1, got {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_tables(leq, j.mult.clone(), j.inv.clone(), j.unit)
    }
}

/// Wire form `{ "n", "leq": [[0|1]], "mult": [[index]], "inv": [index], "unit": index|null }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleJson {
    pub n: usize,
    pub leq: Vec<Vec<u8>>,
    pub mult: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub unit: Option<usize>,
}

impl Serialize for FiniteInvolutiveQuantale {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteInvolutiveQuantale {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = QuantaleJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl InvolutiveQuantale for FiniteInvolutiveQuantale {
    type Elem = usize;

    fn bottom(&self) -> usize {
        self.lattice.bottom()
    }
    fn top(&self) -> usize {
        self.lattice.top()
    }
    fn join(&self, a: &usize, b: &usize) -> usize {
        self.lattice.join(*a, *b)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteInvolutiveQuantale::mul(self, *a, *b)
    }
    fn star(&self, a: &usize) -> usize {
        self.inv(*a)
    }
    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.lattice.leq(*a, *b)
    }
    fn unit(&self) -> Option<usize> {
        self.unit
    }
    fn describe(&self, a: &usize) -> Value {
        json!(a)
    }
}

impl FiniteQuantale for FiniteInvolutiveQuantale {
    fn elements(&self) -> Vec<usize> {
        (0..self.size()).collect()
    }
    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.lattice.meet(*a, *b)
    }
}

fn first_pair(n: usize, exec: Exec, f: impl Fn(usize, usize) -> bool + Sync + Send) -> Option<Value> {
    exec.find_first(n * n, |k| {
        let [a, b] = unflatten(k, [n; 2]);
        f(a, b).then(|| json!({"a": a, "b": b}))
    })
}

fn first_triple(n: usize, exec: Exec, f: impl Fn(usize, usize, usize) -> bool + Sync + Send) -> Option<Value> {
    let total = tuple_count(&[n, n, n]).expect("materialized carriers are small");
    exec.find_first(total, |k| {
        let [a, b, c] = unflatten(k, [n; 3]);
        f(a, b, c).then(|| json!({"a": a, "b": b, "c": c}))
    })
}

/// Every quantale law, each with its least failing tuple.
pub fn verify_quantale(q: &FiniteInvolutiveQuantale, exec: Exec) -> Report {
    let n = q.size();
    let mut r = Report::new("quantale", json!({"kind": "exhaustive", "elements": n}), 0);
    r.push(Check::from_witness(
        "join associativity",
        first_triple(n, exec, |a, b, c| q.join(q.join(a, b), c) != q.join(a, q.join(b, c))),
    ));
    r.push(Check::from_witness(
        "absorption",
        first_pair(n, exec, |a, b| q.join(a, q.meet(a, b)) != a || q.meet(a, q.join(a, b)) != a),
    ));
    r.push(Check::from_witness(
        "bottom and top",
        exec.find_first(n, |a| (!q.leq(q.bottom(), a) || !q.leq(a, q.top())).then(|| json!({"a": a}))),
    ));
    r.push(Check::from_witness(
        "associativity",
        first_triple(n, exec, |a, b, c| q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c))),
    ));
    r.push(Check::from_witness(
        "left distributivity a(b∨c) = ab∨ac",
        first_triple(n, exec, |a, b, c| q.mul(a, q.join(b, c)) != q.join(q.mul(a, b), q.mul(a, c))),
    ));
    r.push(Check::from_witness(
        "right distributivity (a∨b)c = ac∨bc",
        first_triple(n, exec, |a, b, c| q.mul(q.join(a, b), c) != q.join(q.mul(a, c), q.mul(b, c))),
    ));
    let z = q.bottom();
    r.push(Check::from_witness(
        "zero absorption a0 = 0 = 0a",
        exec.find_first(n, |a| (q.mul(a, z) != z || q.mul(z, a) != z).then(|| json!({"a": a}))),
    ));
    r.push(Check::from_witness(
        "involution a** = a",
        exec.find_first(n, |a| (q.inv(q.inv(a)) != a).then(|| json!({"a": a}))),
    ));
    r.push(Check::from_witness(
        "involution antihomomorphism (ab)* = b*a*",
        first_pair(n, exec, |a, b| q.inv(q.mul(a, b)) != q.mul(q.inv(b), q.inv(a))),
    ));
    r.push(Check::from_witness(
        "involution preserves joins",
        first_pair(n, exec, |a, b| q.inv(q.join(a, b)) != q.join(q.inv(a), q.inv(b))),
    ));
    if let Some(e) = q.unit() {
        r.push(Check::from_witness(
            "unit law ea = a = ae",
            exec.find_first(n, |a| (q.mul(e, a) != a || q.mul(a, e) != a).then(|| json!({"a": a}))),
        ));
        let fixed = q.inv(e) == e;
        r.push(Check::from_witness("unit self-adjoint e* = e", (!fixed).then(|| json!({"e": e}))));
    }
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GelfandClass {
    #[serde(rename = "not Gelfand")]
    NotGelfand,
    Gelfand,
    #[serde(rename = "stably Gelfand")]
    StablyGelfand,
    #[serde(rename = "strongly Gelfand")]
    StronglyGelfand,
}

impl fmt::Display for GelfandClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GelfandClass::NotGelfand => "not Gelfand",
            GelfandClass::Gelfand => "Gelfand",
            GelfandClass::StablyGelfand => "stably Gelfand",
            GelfandClass::StronglyGelfand => "strongly Gelfand",
        })
    }
}

/// Strongest Gelfand class and, per predicate, its least failing element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GelfandReport {
    pub class: GelfandClass,
    pub strongly_witness: Option<usize>,
    pub stably_witness: Option<usize>,
    pub gelfand_witness: Option<usize>,
}

pub fn gelfand_class(q: &FiniteInvolutiveQuantale, exec: Exec) -> GelfandReport {
    let n = q.size();
    let top = q.top();
    let sandwiches = exec.map_range(n, |a| q.sandwich(a));
    let strongly_witness = exec.find_first(n, |a| (!q.leq(a, sandwiches[a])).then_some(a));
    let stably_witness = exec.find_first(n, |a| (q.leq(sandwiches[a], a) && !q.leq(a, sandwiches[a])).then_some(a));
    let gelfand_witness = exec.find_first(n, |a| (q.leq(q.mul(a, top), a) && !q.leq(a, sandwiches[a])).then_some(a));
    let class = if strongly_witness.is_none() {
        GelfandClass::StronglyGelfand
    } else if stably_witness.is_none() {
        GelfandClass::StablyGelfand
    } else if gelfand_witness.is_none() {
        GelfandClass::Gelfand
    } else {
        GelfandClass::NotGelfand
    };
    GelfandReport { class, strongly_witness, stably_witness, gelfand_witness }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidedElements {
    pub right: Vec<usize>,
    pub left: Vec<usize>,
    pub two_sided: Vec<usize>,
    /// For Gelfand quantales: whether `ts(Q)` multiplies as its own meet.
    pub two_sided_is_locale: Option<bool>,
}

pub fn sided_elements(q: &FiniteInvolutiveQuantale, exec: Exec) -> SidedElements {
    let n = q.size();
    let top = q.top();
    let right: Vec<usize> = (0..n).filter(|&a| q.leq(q.mul(a, top), a)).collect();
    let left: Vec<usize> = (0..n).filter(|&a| q.leq(q.mul(top, a), a)).collect();
    let two_sided: Vec<usize> = right.iter().copied().filter(|a| left.contains(a)).collect();
    let two_sided_is_locale = (gelfand_class(q, exec).class >= GelfandClass::Gelfand).then(|| {
        two_sided.iter().all(|&a| {
            two_sided.iter().all(|&b| {
                let p = q.mul(a, b);
                p == q.mul(b, a) && p == q.meet(a, b) && q.inv(a) == a
            })
        })
    });
    SidedElements { right, left, two_sided, two_sided_is_locale }
}

/// `ℐ_b(Q)`, ascending; `b` must be a projection.
pub fn pseudogroup_ib(q: &FiniteInvolutiveQuantale, b: usize) -> Result<Vec<usize>> {
    if b >= q.size() {
        return Err(Error::Malformed(format!("element {b} out of range")));
    }
    if q.mul(b, b) != b {
        return Err(Error::NotProjection { element: b, identity: "b = b²" });
    }
    if q.inv(b) != b {
        return Err(Error::NotProjection { element: b, identity: "b = b*" });
    }
    Ok((0..q.size()).filter(|s| q.partial_unit_failure(&b, s).is_none()).collect())
}

/// Clause-by-clause inverse quantal frame test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IqfReport {
    pub unital: bool,
    pub stably_gelfand_witness: Option<usize>,
    pub frame_law_witness: Option<[usize; 3]>,
    pub partial_units: Vec<usize>,
    pub covers_top: bool,
}

impl IqfReport {
    /// The first failing clause in definition order.
    pub fn failed_clause(&self) -> Option<&'static str> {
        if !self.unital {
            Some("unital")
        } else if self.stably_gelfand_witness.is_some() {
            Some("stably Gelfand")
        } else if self.frame_law_witness.is_some() {
            Some("frame law")
        } else if !self.covers_top {
            Some("1 = ∨ℐ(Q)")
        } else {
            None
        }
    }

    pub fn holds(&self) -> bool {
        self.failed_clause().is_none()
    }
}

pub fn is_inverse_quantal_frame(q: &FiniteInvolutiveQuantale, exec: Exec) -> IqfReport {
    let unital = q.unit().is_some();
    let stably_gelfand_witness = gelfand_class(q, exec).stably_witness;
    let frame_law_witness = q.lattice().distributivity_witness(exec);
    let partial_units = q.partial_units();
    let covers_top = unital && q.lattice().join_all(partial_units.iter().copied()) == q.top();
    IqfReport { unital, stably_gelfand_witness, frame_law_witness, partial_units, covers_top }
}

/// `L ⊕ M` on index pairs `(i, j) ↦ i·|M| + j`, all structure pointwise.
pub fn direct_sum(l: &FiniteInvolutiveQuantale, m: &FiniteInvolutiveQuantale) -> Result<FiniteInvolutiveQuantale> {
    let (nl, nm) = (l.size(), m.size());
    let n = nl
        .checked_mul(nm)
        .filter(|&n| n <= DEFAULT_THRESHOLD)
        .ok_or(Error::TooLarge { required: nl as u128 * nm as u128, threshold: DEFAULT_THRESHOLD })?;
    let split = |k: usize| (k / nm, k % nm);
    let lattice = FiniteSupLattice::from_fn(n, |a, b| {
        let ((a1, a2), (b1, b2)) = (split(a), split(b));
        l.leq(a1, b1) && m.leq(a2, b2)
    })?;
    let unit = match (l.unit(), m.unit()) {
        (Some(e1), Some(e2)) => Some(e1 * nm + e2),
        _ => None,
    };
    FiniteInvolutiveQuantale::from_lattice(
        lattice,
        |a, b| {
            let ((a1, a2), (b1, b2)) = (split(a), split(b));
            l.mul(a1, b1) * nm + m.mul(a2, b2)
        },
        |a| {
            let (a1, a2) = split(a);
            l.inv(a1) * nm + m.inv(a2)
        },
        unit,
    )
}

/// Biproduct structure maps of `L ⊕ M`, as index functions.
#[derive(Clone, Copy, Debug)]
pub struct Biproduct {
    pub left_size: usize,
    pub right_size: usize,
    pub left_bottom: usize,
    pub right_bottom: usize,
}

impl Biproduct {
    pub fn of(l: &FiniteInvolutiveQuantale, m: &FiniteInvolutiveQuantale) -> Self {
        Self { left_size: l.size(), right_size: m.size(), left_bottom: l.bottom(), right_bottom: m.bottom() }
    }
    pub fn pair(&self, x: usize, y: usize) -> usize {
        x * self.right_size + y
    }
    pub fn pi1(&self, k: usize) -> usize {
        k / self.right_size
    }
    pub fn pi2(&self, k: usize) -> usize {
        k % self.right_size
    }
    pub fn i1(&self, x: usize) -> usize {
        self.pair(x, self.right_bottom)
    }
    pub fn i2(&self, y: usize) -> usize {
        self.pair(self.left_bottom, y)
    }
}

/// First `(x, m, n)` violating `(x,1)∧((1,m)∨(1,n)) = ((x,1)∧(1,m))∨((x,1)∧(1,n))` in `L ⊕ M`.
pub fn direct_sum_distributivity_witness(
    l: &FiniteInvolutiveQuantale,
    m: &FiniteInvolutiveQuantale,
    sum: &FiniteInvolutiveQuantale,
    exec: Exec,
) -> Option<[usize; 3]> {
    let bp = Biproduct::of(l, m);
    let (nl, nm) = (l.size(), m.size());
    exec.find_first(nl * nm * nm, |k| {
        let [x, a, b] = unflatten(k, [nl, nm, nm]);
        let x1 = bp.pair(x, m.top());
        let (ma, mb) = (bp.pair(l.top(), a), bp.pair(l.top(), b));
        let lhs = sum.meet(x1, sum.join(ma, mb));
        let rhs = sum.join(sum.meet(x1, ma), sum.meet(x1, mb));
        (lhs != rhs).then_some([x, a, b])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3_bad() -> FiniteInvolutiveQuantale {
        let lattice = FiniteSupLattice::chain(3).unwrap();
        FiniteInvolutiveQuantale::from_lattice(lattice, |a, b| if a == 2 && b == 2 { 1 } else { 0 }, |a| a, None)
            .unwrap()
    }

    #[test]
    fn relations_on_two_points() {
        let q = FiniteInvolutiveQuantale::relations(2).unwrap();
        assert_eq!(q.size(), 16);
        assert!(verify_quantale(&q, Exec::Sequential).passed());
        assert_eq!(gelfand_class(&q, Exec::Sequential).class, GelfandClass::StronglyGelfand);
        let e = q.unit().unwrap();
        assert_eq!(pseudogroup_ib(&q, e).unwrap().len(), 7);
        assert!(is_inverse_quantal_frame(&q, Exec::Sequential).holds());
        assert_eq!(sided_elements(&q, Exec::Sequential).right.len(), 4);
    }

    #[test]
    fn bad_chain_is_a_quantale_but_not_stably_gelfand() {
        let q = chain3_bad();
        assert!(verify_quantale(&q, Exec::Sequential).passed());
        let g = gelfand_class(&q, Exec::Sequential);
        assert_eq!(g.stably_witness, Some(1));
        assert_eq!(g.class, GelfandClass::NotGelfand);
        let iqf = is_inverse_quantal_frame(&q, Exec::Sequential);
        assert_eq!(iqf.failed_clause(), Some("unital"));
    }

    #[test]
    fn missing_join_is_rejected() {
        // Two incomparable maximal elements over a bottom.
        let leq = |a: usize, b: usize| a == b || a == 0;
        assert!(matches!(FiniteSupLattice::from_fn(3, leq), Err(Error::MissingBound(1, 2, "join"))));
    }

    #[test]
    fn projection_precondition() {
        let q = FiniteInvolutiveQuantale::relations(2).unwrap();
        // {(1,2)} = bit 1: squares to the empty relation.
        assert!(matches!(pseudogroup_ib(&q, 0b0010), Err(Error::NotProjection { identity: "b = b²", .. })));
        assert_eq!(pseudogroup_ib(&q, 0).unwrap(), vec![0]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let q = chain3_bad();
        let text = serde_json::to_string(&q).unwrap();
        let back: FiniteInvolutiveQuantale = serde_json::from_str(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
