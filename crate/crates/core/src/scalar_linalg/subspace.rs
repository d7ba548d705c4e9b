use std::fmt;

use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};

/// A coordinate vector over a fixed ambient basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<GaussianRational>,
}

impl Vector {
    pub fn new(coords: Vec<GaussianRational>) -> Self {
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self { coords: vec![GaussianRational::zero(); dim] }
    }

    /// The `k`-th standard basis vector.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[k] = GaussianRational::one();
        v
    }

    pub fn from_ints(entries: &[(i64, i64)]) -> Self {
        Self::new(entries.iter().map(|&(re, im)| GaussianRational::int(re, im)).collect())
    }

    pub fn from_reals(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&re| GaussianRational::int(re, 0)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<GaussianRational> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self.ambient_dim(), other.ambient_dim())?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k)
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = GaussianRational;
    fn index(&self, k: usize) -> &GaussianRational {
        &self.coords[k]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

fn reduce_with(rows: &[Vec<GaussianRational>], pivots: &[usize], v: &mut [GaussianRational]) {
    for (row, &p) in rows.iter().zip(pivots) {
        if v[p].is_zero() {
            continue;
        }
        let c = v[p].clone();
        for (x, r) in v[p..].iter_mut().zip(&row[p..]) {
            x.sub_mul(&c, r);
        }
    }
}

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are kept sorted by pivot, every pivot entry is 1 and every pivot
/// column is zero in all other rows, so reducing a vector against the rows
/// can be done in any order.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    dim: usize,
    rows: Vec<Vec<GaussianRational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn from_subspace(s: &Subspace) -> Self {
        Self { dim: s.ambient_dim, rows: s.rows.clone(), pivots: s.pivots.clone() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce(&self, v: &mut [GaussianRational]) {
        reduce_with(&self.rows, &self.pivots, v);
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: Vec<GaussianRational>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(q) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if !v[q].is_one() {
            let inv = v[q].inverse().expect("nonzero pivot");
            for x in v[q..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if row[q].is_zero() {
                continue;
            }
            let c = row[q].clone();
            for (x, r) in row[q..].iter_mut().zip(&v[q..]) {
                x.sub_mul(&c, r);
            }
        }
        let at = self.pivots.partition_point(|&p| p < q);
        self.pivots.insert(at, q);
        self.rows.insert(at, v);
        true
    }

    pub(crate) fn finish(self) -> Subspace {
        Subspace { ambient_dim: self.dim, rows: self.rows, pivots: self.pivots }
    }
}

/// A linear subspace of a coordinate space, stored by its reduced row-echelon basis.
///
/// The echelon form is canonical, so derived equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<Vec<GaussianRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Echelon::new(ambient_dim).finish()
    }

    pub fn full(ambient_dim: usize) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for k in 0..ambient_dim {
            e.insert(Vector::unit(ambient_dim, k).into_coords());
        }
        e.finish()
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for k in indices {
            e.insert(Vector::unit(ambient_dim, k).into_coords());
        }
        e.finish()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<GaussianRational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> impl Iterator<Item = Vector> + '_ {
        self.rows.iter().map(|r| Vector::new(r.clone()))
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        check_dims(self.ambient_dim, v.ambient_dim())?;
        Ok(self.contains_coords(v.coords()))
    }

    pub(crate) fn contains_coords(&self, v: &[GaussianRational]) -> bool {
        if self.rows.len() == self.ambient_dim || v.iter().all(GaussianRational::is_zero) {
            return true;
        }
        let mut w = v.to_vec();
        reduce_with(&self.rows, &self.pivots, &mut w);
        w.iter().all(GaussianRational::is_zero)
    }

    /// Every row in this subspace's echelon form satisfies the shape invariants.
    pub fn is_canonical(&self) -> bool {
        if self.rows.len() != self.pivots.len() || self.rows.len() > self.ambient_dim {
            return false;
        }
        if self.pivots.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        self.rows.iter().zip(&self.pivots).enumerate().all(|(k, (row, &p))| {
            row.len() == self.ambient_dim
                && p < self.ambient_dim
                && row[..p].iter().all(GaussianRational::is_zero)
                && row[p].is_one()
                && self.pivots.iter().enumerate().all(|(j, &q)| j == k || self.rows[j][p].is_zero() && row[q].is_zero())
        })
    }

    /// Builds a subspace from rows claimed to be canonical, rejecting anything else.
    pub fn from_canonical_rows(ambient_dim: usize, rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let pivots: Vec<usize> =
            rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX)).collect();
        let s = Subspace { ambient_dim, rows, pivots };
        if s.is_canonical() {
            Ok(s)
        } else {
            Err(Error::Malformed("rows are not in reduced row-echelon form".into()))
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.dim(), self.ambient_dim)?;
        f.debug_list().entries(&self.rows).finish()?;
        write!(f, ")")
    }
}

/// Wire form: `{"ambient_dim": n, "basis": [[ "a/b+c/d*i", ... ], ...]}`, rows in canonical order.
#[derive(Serialize, Deserialize)]
struct SubspaceWire {
    ambient_dim: usize,
    basis: Vec<Vec<GaussianRational>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceWire { ambient_dim: self.ambient_dim, basis: self.rows.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = SubspaceWire::deserialize(deserializer)?;
        if w.basis.iter().any(|r| r.len() != w.ambient_dim) {
            return Err(serde::de::Error::custom("row length differs from ambient_dim"));
        }
        let vectors: Vec<Vector> = w.basis.into_iter().map(Vector::new).collect();
        span_canonicalize_in(w.ambient_dim, &vectors).map_err(serde::de::Error::custom)
    }
}

/// Canonical basis of the span of `vectors`; all must share one ambient dimension.
pub fn span_canonicalize(vectors: &[Vector]) -> Result<Subspace> {
    let dim = vectors.first().map_or(0, Vector::ambient_dim);
    span_canonicalize_in(dim, vectors)
}

/// As [`span_canonicalize`] with an explicit ambient dimension, so the empty list is typed.
pub fn span_canonicalize_in(ambient_dim: usize, vectors: &[Vector]) -> Result<Subspace> {
    for v in vectors {
        check_dims(ambient_dim, v.ambient_dim())?;
    }
    let mut e = Echelon::new(ambient_dim);
    for v in vectors {
        if e.is_full() {
            break;
        }
        e.insert(v.coords().to_vec());
    }
    Ok(e.finish())
}

/// `P ∨ Q`, the span of `P ∪ Q`.
pub fn subspace_sum(p: &Subspace, q: &Subspace) -> Result<Subspace> {
    check_dims(p.ambient_dim, q.ambient_dim)?;
    let (big, small) = if p.dim() >= q.dim() { (p, q) } else { (q, p) };
    let mut e = Echelon::from_subspace(big);
    for row in &small.rows {
        if e.is_full() {
            break;
        }
        e.insert(row.clone());
    }
    Ok(e.finish())
}

/// `P ∧ Q` by the Zassenhaus construction: reduce `[p | p]` and `[q | 0]`;
/// the rows with zero left half span the intersection.
pub fn subspace_intersect(p: &Subspace, q: &Subspace) -> Result<Subspace> {
    check_dims(p.ambient_dim, q.ambient_dim)?;
    let n = p.ambient_dim;
    if p.is_zero() || q.is_zero() {
        return Ok(Subspace::zero(n));
    }
    if p.dim() == n {
        return Ok(q.clone());
    }
    if q.dim() == n {
        return Ok(p.clone());
    }
    let mut e = Echelon::new(2 * n);
    for row in &p.rows {
        let mut v = row.clone();
        v.extend(row.iter().cloned());
        e.insert(v);
    }
    for row in &q.rows {
        let mut v = row.clone();
        v.extend(std::iter::repeat_n(GaussianRational::zero(), n));
        e.insert(v);
    }
    let mut out = Echelon::new(n);
    for (row, &piv) in e.rows.iter().zip(&e.pivots) {
        if piv >= n {
            out.insert(row[n..].to_vec());
        }
    }
    Ok(out.finish())
}

/// Inclusion order: every basis row of `P` lies in `Q`.
pub fn subspace_leq(p: &Subspace, q: &Subspace) -> Result<bool> {
    check_dims(p.ambient_dim, q.ambient_dim)?;
    if p.dim() > q.dim() {
        return Ok(false);
    }
    Ok(p.rows.iter().all(|r| q.contains_coords(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        Vector::from_reals(xs)
    }

    fn det2(a: &Vector, b: &Vector) -> GaussianRational {
        &(&a[0] * &b[1]) - &(&a[1] * &b[0])
    }

    #[test]
    fn empty_span_is_typed_zero() {
        let s = span_canonicalize_in(2, &[]).unwrap();
        assert_eq!(s.ambient_dim(), 2);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn identity_basis_is_already_canonical() {
        let s = span_canonicalize(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, Subspace::full(2));
        let again = span_canonicalize(&s.basis().collect::<Vec<_>>()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn plus_minus_pair_spans_plane() {
        // 2x2 determinant oracle: nonzero determinant means rank 2.
        let (a, b) = (v(&[1, 1]), v(&[1, -1]));
        assert!(!det2(&a, &b).is_zero());
        let s = span_canonicalize(&[a, b]).unwrap();
        assert_eq!(s, span_canonicalize(&[v(&[1, 0]), v(&[0, 1])]).unwrap());
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let e = span_canonicalize(&[v(&[1, 0]), v(&[1, 0, 0])]).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch { .. }));
        let p = Subspace::full(2);
        let q = Subspace::full(3);
        assert!(subspace_sum(&p, &q).is_err());
        assert!(subspace_intersect(&p, &q).is_err());
        assert!(subspace_leq(&p, &q).is_err());
    }

    #[test]
    fn sum_examples() {
        let p = span_canonicalize(&[v(&[1, 1])]).unwrap();
        let q = span_canonicalize(&[v(&[1, -1])]).unwrap();
        let oracle = span_canonicalize(&[v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(subspace_sum(&p, &q).unwrap(), oracle);
        assert_eq!(oracle, Subspace::full(2));
        assert_eq!(subspace_sum(&p, &Subspace::zero(2)).unwrap(), p);
    }

    #[test]
    fn intersect_examples() {
        let p = span_canonicalize(&[v(&[1, 1])]).unwrap();
        assert_eq!(subspace_intersect(&p, &p).unwrap(), p);
        let full = Subspace::full(2);
        let meet = subspace_intersect(&full, &p).unwrap();
        // Membership oracle: the basis vector of p lies in both, and the meet is 1-dimensional.
        assert!(full.contains(&v(&[1, 1])).unwrap() && p.contains(&v(&[1, 1])).unwrap());
        assert_eq!(meet, p);
        let up = span_canonicalize(&[v(&[1, 0])]).unwrap();
        let down = span_canonicalize(&[v(&[0, 1])]).unwrap();
        assert!(subspace_intersect(&up, &down).unwrap().is_zero());
    }

    #[test]
    fn leq_examples() {
        let p = span_canonicalize(&[v(&[1, 1])]).unwrap();
        assert!(subspace_leq(&Subspace::zero(2), &p).unwrap());
        assert!(subspace_leq(&p, &Subspace::full(2)).unwrap());
        // (1,0) = λ(1,1) has no solution: first coordinate forces λ = 1, second gives 0 = 1.
        let e1 = span_canonicalize(&[v(&[1, 0])]).unwrap();
        assert!(!subspace_leq(&e1, &p).unwrap());
    }

    #[test]
    fn complex_entries_canonicalize() {
        let a = Vector::from_ints(&[(0, 1), (1, 1)]);
        let s = span_canonicalize(&[a]).unwrap();
        assert!(s.is_canonical());
        assert_eq!(s.rows()[0][0], GaussianRational::one());
        assert_eq!(s.rows()[0][1], GaussianRational::int(1, -1));
    }

    #[test]
    fn serde_round_trip() {
        let s = span_canonicalize(&[Vector::from_ints(&[(1, 0), (0, 1), (2, 0)])]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"ambient_dim":3,"basis":[["1/1+0/1*i","0/1+1/1*i","2/1+0/1*i"]]}"#);
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn from_canonical_rows_validates() {
        let one = GaussianRational::one();
        let zero = GaussianRational::zero();
        assert!(Subspace::from_canonical_rows(2, vec![vec![one.clone(), zero.clone()]]).is_ok());
        assert!(Subspace::from_canonical_rows(2, vec![vec![one.clone() + one.clone(), zero]]).is_err());
    }
}
