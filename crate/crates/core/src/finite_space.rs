//! Finite topological spaces on at most 16 points.
//!
//! Subsets are `u32` bitmasks; bit `k` is point `k`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopSpace {
    n: usize,
    /// Sorted, duplicate-free.
    opens: Vec<u32>,
}

fn full(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn points(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&k| mask >> k & 1 == 1)
}

impl FiniteTopSpace {
    pub fn new(n: usize, opens: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::TooLarge { required: n as u128, threshold: MAX_POINTS });
        }
        let all = full(n);
        let mut opens: Vec<u32> = opens.into_iter().collect();
        if let Some(&bad) = opens.iter().find(|&&u| u & !all != 0) {
            return Err(Error::InvalidTopology(format!("open set {bad:#b} mentions points ≥ {n}")));
        }
        opens.sort_unstable();
        opens.dedup();
        if opens.binary_search(&0).is_err() {
            return Err(Error::InvalidTopology("∅ is not open".into()));
        }
        if opens.binary_search(&all).is_err() {
            return Err(Error::InvalidTopology("the whole space is not open".into()));
        }
        for &u in &opens {
            for &v in &opens {
                if opens.binary_search(&(u | v)).is_err() {
                    return Err(Error::InvalidTopology(format!("union of {u:#b} and {v:#b} is not open")));
                }
                if opens.binary_search(&(u & v)).is_err() {
                    return Err(Error::InvalidTopology(format!("intersection of {u:#b} and {v:#b} is not open")));
                }
            }
        }
        Ok(Self { n, opens })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        Self::new(n, 0..=full(n))
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        Self::new(n, [0, full(n)])
    }

    /// Opens `∅`, `{1}`, `{0,1}`.
    pub fn sierpinski() -> Self {
        Self::new(2, [0b00, 0b10, 0b11]).expect("valid topology")
    }

    pub fn points(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[u32] {
        &self.opens
    }

    pub fn is_open(&self, u: u32) -> bool {
        self.opens.binary_search(&u).is_ok()
    }

    pub fn closed_sets(&self) -> Vec<u32> {
        let all = full(self.n);
        let mut c: Vec<u32> = self.opens.iter().map(|&u| all & !u).collect();
        c.sort_unstable();
        c
    }

    /// Smallest closed superset.
    pub fn closure(&self, s: u32) -> u32 {
        let outside = self.opens.iter().filter(|&&u| u & s == 0).fold(0, |acc, &u| acc | u);
        full(self.n) & !outside
    }

    /// Smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> u32 {
        self.opens.iter().filter(|&&u| u >> x & 1 == 1).fold(full(self.n), |acc, &u| acc & u)
    }

    pub fn to_json(&self) -> SpaceJson {
        SpaceJson { n: self.n, opens: self.opens.iter().map(|&u| points(u).collect()).collect() }
    }

    pub fn from_json(j: &SpaceJson) -> Result<Self> {
        let mut opens = Vec::with_capacity(j.opens.len());
        for u in &j.opens {
            let mut mask = 0u32;
            for &p in u {
                if p >= j.n {
                    return Err(Error::InvalidTopology(format!("point {p} out of range")));
                }
                mask |= 1 << p;
            }
            opens.push(mask);
        }
        Self::new(j.n, opens)
    }
}

/// Wire form `{ "n": int, "opens": [[point indices]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    pub n: usize,
    pub opens: Vec<Vec<usize>>,
}

/// `leq[m][n]` iff `m ∈ {n}‾`, i.e. every open containing `m` contains `n`.
pub fn specialization_order(s: &FiniteTopSpace) -> Vec<Vec<bool>> {
    (0..s.n)
        .map(|m| {
            let cl_of = |n: usize| s.closure(1 << n);
            (0..s.n).map(|n| cl_of(n) >> m & 1 == 1).collect()
        })
        .collect()
}

fn check_partial_order(leq: &[Vec<bool>]) -> Result<()> {
    let n = leq.len();
    if leq.iter().any(|r| r.len() != n) {
        return Err(Error::Malformed("order matrix is not square".into()));
    }
    for a in 0..n {
        if !leq[a][a] {
            return Err(Error::NotPartialOrder(format!("reflexivity fails at {a}")));
        }
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::NotPartialOrder(format!("antisymmetry fails at ({a}, {b})")));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::NotPartialOrder(format!("transitivity fails at ({a}, {b}, {c})")));
                }
            }
        }
    }
    Ok(())
}

/// The up-set (Alexandrov) topology of a finite poset.
pub fn alexandrov_space(leq: &[Vec<bool>]) -> Result<FiniteTopSpace> {
    check_partial_order(leq)?;
    let n = leq.len();
    if n > MAX_POINTS {
        return Err(Error::TooLarge { required: n as u128, threshold: MAX_POINTS });
    }
    let up: Vec<u32> = (0..n).map(|a| (0..n).filter(|&b| leq[a][b]).fold(0, |m, b| m | 1 << b)).collect();
    let opens = (0..=full(n)).filter(|&u| points(u).all(|a| up[a] & !u == 0));
    FiniteTopSpace::new(n, opens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SoberWitness {
    /// Distinct points with the same neighbourhoods.
    NotT0 { a: usize, b: usize },
    /// An irreducible closed set that is not a point closure.
    NoGenericPoint { closed: Vec<usize> },
}

pub fn sober_witness(s: &FiniteTopSpace) -> Option<SoberWitness> {
    for a in 0..s.n {
        for b in a + 1..s.n {
            if s.opens.iter().all(|&u| (u >> a & 1) == (u >> b & 1)) {
                return Some(SoberWitness::NotT0 { a, b });
            }
        }
    }
    let closed = s.closed_sets();
    for &c in &closed {
        if c == 0 {
            continue;
        }
        let proper: Vec<u32> = closed.iter().copied().filter(|&d| d & !c == 0 && d != c).collect();
        let irreducible = !proper.iter().any(|&a| proper.iter().any(|&b| a | b == c));
        if irreducible && !(0..s.n).any(|x| s.closure(1 << x) == c) {
            return Some(SoberWitness::NoGenericPoint { closed: points(c).collect() });
        }
    }
    None
}

pub fn is_sober(s: &FiniteTopSpace) -> bool {
    sober_witness(s).is_none()
}

/// Outcome of the sober-lattice test; `witness` names the first failing clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoberLatticeReport {
    pub witness: Option<Value>,
}

impl SoberLatticeReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Binary join in the specialization order, if it exists.
fn join_table(leq: &[Vec<bool>]) -> std::result::Result<Vec<Vec<usize>>, (usize, usize)> {
    let n = leq.len();
    let mut t = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ub: Vec<usize> = (0..n).filter(|&u| leq[a][u] && leq[b][u]).collect();
            t[a][b] = ub.iter().copied().find(|&j| ub.iter().all(|&u| leq[j][u])).ok_or((a, b))?;
        }
    }
    Ok(t)
}

pub fn is_sober_lattice(s: &FiniteTopSpace) -> SoberLatticeReport {
    let fail = |w: Value| SoberLatticeReport { witness: Some(w) };
    if let Some(w) = sober_witness(s) {
        return fail(json!({"clause": "sober", "detail": w}));
    }
    let leq = specialization_order(s);
    let n = s.n;
    if !(0..n).any(|z| (0..n).all(|x| leq[z][x])) {
        return fail(json!("no bottom"));
    }
    let join = match join_table(&leq) {
        Ok(t) => t,
        Err((a, b)) => return fail(json!({"clause": "binary joins", "a": a, "b": b})),
    };
    let nbhd: Vec<u32> = (0..n).map(|x| s.neighbourhood(x)).collect();
    for &u in &s.opens {
        for x in 0..n {
            for y in 0..n {
                if u >> join[x][y] & 1 == 0 {
                    continue;
                }
                // The box N(x)×N(y) must map into U.
                let escapes = points(nbhd[x]).any(|x2| points(nbhd[y]).any(|y2| u >> join[x2][y2] & 1 == 0));
                if escapes {
                    return fail(
                        json!({"clause": "continuity of ∨", "open": points(u).collect::<Vec<_>>(), "x": x, "y": y}),
                    );
                }
            }
        }
    }
    for &v in &s.opens {
        for &w in &s.opens {
            let joined = points(v).fold(0u32, |acc, x| points(w).fold(acc, |acc, y| acc | 1 << join[x][y]));
            if joined != v & w {
                return fail(json!({
                    "clause": "V∩W = V∨W",
                    "V": points(v).collect::<Vec<_>>(),
                    "W": points(w).collect::<Vec<_>>(),
                }));
            }
        }
    }
    SoberLatticeReport { witness: None }
}

/// First subset `S` with `∨S ≠ ∨S̄`; the space must be a sober lattice.
pub fn closure_join_witness(s: &FiniteTopSpace) -> Option<Vec<usize>> {
    let leq = specialization_order(s);
    let join = join_table(&leq).ok()?;
    let bottom = (0..s.n).find(|&z| (0..s.n).all(|x| leq[z][x]))?;
    let join_of = |m: u32| points(m).fold(bottom, |acc, x| join[acc][x]);
    (0..=full(s.n)).find(|&m| join_of(m) != join_of(s.closure(m))).map(|m| points(m).collect())
}

/// A random finite lattice with at most `max_size` elements, as an order matrix.
///
/// Built as an intersection-closed family of subsets of a small ground set
/// (with the ground set added), which is a lattice under inclusion.
pub fn random_lattice(rng: &mut ChaCha8Rng, max_size: usize) -> Vec<Vec<bool>> {
    assert!(max_size >= 1);
    loop {
        let ground = rng.random_range(1..=4u32);
        let all = (1u32 << ground) - 1;
        let mut family = vec![all];
        for _ in 0..rng.random_range(0..=4) {
            let s = rng.random_range(0..=all);
            let mut grown = family.clone();
            grown.push(s);
            loop {
                let mut next = grown.clone();
                for &a in &grown {
                    for &b in &grown {
                        next.push(a & b);
                    }
                }
                next.sort_unstable();
                next.dedup();
                if next.len() == grown.len() {
                    break;
                }
                grown = next;
            }
            family = grown;
        }
        family.sort_unstable();
        family.dedup();
        if family.len() <= max_size {
            return family.iter().map(|&a| family.iter().map(|&b| a & !b == 0).collect()).collect();
        }
    }
}

pub fn random_lattices(seed: u64, count: usize, max_size: usize) -> Vec<Vec<Vec<bool>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_lattice(&mut rng, max_size)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_order() {
        let s = FiniteTopSpace::sierpinski();
        let o = specialization_order(&s);
        assert!(o[0][1] && !o[1][0]);
        assert!(is_sober(&s));
        assert!(is_sober_lattice(&s).holds());
    }

    #[test]
    fn indiscrete_is_not_t0() {
        let s = FiniteTopSpace::indiscrete(2).unwrap();
        assert_eq!(sober_witness(&s), Some(SoberWitness::NotT0 { a: 0, b: 1 }));
        let o = specialization_order(&s);
        assert!(o[0][1] && o[1][0]);
    }

    #[test]
    fn discrete_pair_has_no_bottom() {
        let s = FiniteTopSpace::discrete(2).unwrap();
        assert_eq!(is_sober_lattice(&s).witness, Some(json!("no bottom")));
    }

    #[test]
    fn rejects_non_topologies() {
        assert!(FiniteTopSpace::new(2, [0, 0b01, 0b10]).is_err());
        assert!(FiniteTopSpace::new(2, [0b01, 0b11]).is_err());
    }
}
