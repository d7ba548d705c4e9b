//! The linear powerspace `Max ℂG` on finitely presented subspaces.
//!
//! `Max A` is never materialized. Its elements are canonical subspaces of the
//! coordinate space of `ℂG` (basis: deltas of arrows), the order is
//! inclusion, `PQ` is the span of basis products and `P*` the span of the
//! starred basis. Matrix algebras `M_n` are `ℂ·pair(n)` read through
//! `δ_(i,j) ↦ E_ij`.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groupoid::{ArrowSet, FiniteGroupoid};
use crate::groupoid_algebra::{
    convolve_coords, from_matrix, sandwich_support, star_coords, support_of, GroupoidFunction,
};
use crate::measurement::InvolutiveQuantale;
use crate::scalar_linalg::{
    span_canonicalize_in, subspace_leq, subspace_sum, Echelon, GaussianRational, Matrix, Subspace, Vector,
};

/// `Max ℂG` for a fixed finite groupoid `G`.
#[derive(Clone, Debug)]
pub struct Powerspace {
    groupoid: Arc<FiniteGroupoid>,
}

impl Powerspace {
    pub fn new(groupoid: Arc<FiniteGroupoid>) -> Self {
        Self { groupoid }
    }

    /// `Max M_n`, presented as `Max ℂ·pair(n)`.
    pub fn matrices(n: usize) -> Result<Self> {
        Ok(Self::new(Arc::new(FiniteGroupoid::pair(n)?)))
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    /// `|G₁|`.
    pub fn dim(&self) -> usize {
        self.groupoid.arrow_count()
    }

    fn check(&self, p: &Subspace) -> Result<()> {
        if p.ambient_dim() == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim(), right: p.ambient_dim() })
        }
    }

    pub fn span(&self, fns: &[GroupoidFunction]) -> Result<Subspace> {
        let vs: Vec<Vector> = fns.iter().map(|f| f.coeffs().clone()).collect();
        span_canonicalize_in(self.dim(), &vs)
    }

    /// Span of matrices, for `Max M_n`.
    pub fn span_matrices(&self, ms: &[Matrix]) -> Result<Subspace> {
        let fns = ms.iter().map(|m| from_matrix(self.groupoid.clone(), m)).collect::<Result<Vec<_>>>()?;
        self.span(&fns)
    }

    /// Canonical basis as matrices, for `Max M_n`.
    pub fn basis_matrices(&self, p: &Subspace) -> Result<Vec<Matrix>> {
        p.basis()
            .map(|v| crate::groupoid_algebra::matrix_rep(&GroupoidFunction::new(self.groupoid.clone(), v)?))
            .collect()
    }

    /// `PQ = ⟨P·Q⟩`: the span of all products of basis vectors.
    pub fn product(&self, p: &Subspace, q: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        self.check(q)?;
        let mut ech = Echelon::new(self.dim());
        'outer: for a in p.rows() {
            for b in q.rows() {
                if ech.is_full() {
                    break 'outer;
                }
                ech.insert(convolve_coords(&self.groupoid, a, b));
            }
        }
        Ok(ech.finish())
    }

    /// `P* = ⟨f* | f ∈ P⟩`.
    pub fn involute(&self, p: &Subspace) -> Result<Subspace> {
        self.check(p)?;
        let mut ech = Echelon::new(self.dim());
        for a in p.rows() {
            ech.insert(star_coords(&self.groupoid, a));
        }
        Ok(ech.finish())
    }

    /// `osupp V`: the union of the supports of the canonical basis.
    pub fn osupp(&self, v: &Subspace) -> ArrowSet {
        v.rows().iter().fold(ArrowSet::EMPTY, |acc, r| acc.union(support_of(r)))
    }

    /// `osupp(PQ)` without canonicalizing the product.
    pub fn osupp_product(&self, p: &Subspace, q: &Subspace) -> ArrowSet {
        let qs: Vec<ArrowSet> = q.rows().iter().map(|b| support_of(b)).collect();
        let mut out = ArrowSet::EMPTY;
        for a in p.rows() {
            let sa = support_of(a);
            for (b, &sb) in q.rows().iter().zip(&qs) {
                out = out.union(sandwich_support(&self.groupoid, a, sa, None, b, sb));
            }
        }
        out
    }

    /// `ι(U) = span{δ_g | g ∈ U}`.
    pub fn iota(&self, u: ArrowSet) -> Subspace {
        Subspace::coordinate(self.dim(), u.ids())
    }
}

impl InvolutiveQuantale for Powerspace {
    type Elem = Subspace;

    fn bottom(&self) -> Subspace {
        Subspace::zero(self.dim())
    }
    fn top(&self) -> Subspace {
        Subspace::full(self.dim())
    }
    fn join(&self, a: &Subspace, b: &Subspace) -> Subspace {
        subspace_sum(a, b).expect("elements of one powerspace")
    }
    fn mul(&self, a: &Subspace, b: &Subspace) -> Subspace {
        self.product(a, b).expect("elements of one powerspace")
    }
    fn star(&self, a: &Subspace) -> Subspace {
        self.involute(a).expect("elements of one powerspace")
    }
    fn leq(&self, a: &Subspace, b: &Subspace) -> bool {
        subspace_leq(a, b).expect("elements of one powerspace")
    }
    /// `⟨1⟩`, the span of the identity `Σ_x δ_u(x)`.
    fn unit(&self) -> Option<Subspace> {
        let one = GroupoidFunction::from_terms(
            self.groupoid.clone(),
            &self.groupoid.units().ids().map(|a| (a, GaussianRational::one())).collect::<Vec<_>>(),
        );
        Some(self.span(&[one]).expect("one vector of the right dimension"))
    }
    fn describe(&self, a: &Subspace) -> Value {
        describe_subspace(&self.groupoid, a)
    }
}

/// Basis rows as `{arrow label: coefficient}` maps with zero entries omitted.
pub fn describe_subspace(g: &FiniteGroupoid, a: &Subspace) -> Value {
    let rows: Vec<Value> = a
        .rows()
        .iter()
        .map(|r| {
            let m: Map<String, Value> = r
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (g.label(k).to_string(), json!(c.to_string())))
                .collect();
            Value::Object(m)
        })
        .collect();
    json!(rows)
}

pub fn max_product(alg: &Powerspace, p: &Subspace, q: &Subspace) -> Result<Subspace> {
    alg.product(p, q)
}

pub fn max_involute(alg: &Powerspace, p: &Subspace) -> Result<Subspace> {
    alg.involute(p)
}

pub fn osupp_subspace(alg: &Powerspace, v: &Subspace) -> Result<ArrowSet> {
    alg.check(v)?;
    Ok(alg.osupp(v))
}

pub fn iota_cc(alg: &Powerspace, u: ArrowSet) -> Result<Subspace> {
    if !u.is_subset(alg.groupoid.all_arrows()) {
        return Err(Error::Malformed("arrow set exceeds G₁".into()));
    }
    Ok(alg.iota(u))
}

/// `PP*P` and both comparisons with `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablyGelfandReport {
    pub sandwich: Subspace,
    pub sandwich_leq_p: bool,
    pub p_leq_sandwich: bool,
}

impl StablyGelfandReport {
    /// `PP*P ≤ P` without `P ≤ PP*P`.
    pub fn violated(&self) -> bool {
        self.sandwich_leq_p && !self.p_leq_sandwich
    }
}

pub fn stably_gelfand_element(alg: &Powerspace, p: &Subspace) -> Result<StablyGelfandReport> {
    let ps = alg.involute(p)?;
    let sandwich = alg.product(&alg.product(p, &ps)?, p)?;
    Ok(StablyGelfandReport {
        sandwich_leq_p: subspace_leq(&sandwich, p)?,
        p_leq_sandwich: subspace_leq(p, &sandwich)?,
        sandwich,
    })
}

/// `Max h(P) = h(P)`: span of the images of a basis.
pub fn pushforward_subspace(h: &Matrix, p: &Subspace) -> Result<Subspace> {
    h.image_of(p)
}

/// `f♯(P)`: the join of `f` over the canonical basis of `P`.
pub fn sup_extension<L>(p: &Subspace, bottom: L, f: impl Fn(&Vector) -> L, join: impl Fn(L, L) -> L) -> L {
    p.basis().fold(bottom, |acc, v| join(acc, f(&v)))
}

/// Zero-pattern retraction on `Max M_n`: `V ↦ V_A` where `A` marks the
/// entries not identically zero on `V`.
pub fn zero_pattern_retraction(alg: &Powerspace, v: &Subspace) -> Result<Subspace> {
    let n = alg.groupoid.object_count();
    let coords = alg.groupoid.pair_coordinates()?;
    let mut pattern = vec![false; n * n];
    for m in alg.basis_matrices(v)? {
        for i in 0..n {
            for j in 0..n {
                if !m[(i, j)].is_zero() {
                    pattern[i * n + j] = true;
                }
            }
        }
    }
    let units: Vec<Matrix> =
        coords.iter().filter(|&&(i, j)| pattern[i * n + j]).map(|&(i, j)| Matrix::unit(n, i, j)).collect();
    alg.span_matrices(&units)
}

/// The spin measurements as subspaces of `M₂`.
#[derive(Clone, Debug)]
pub struct SpinLibrary {
    pub algebra: Powerspace,
    pub z_up: Subspace,
    pub z_down: Subspace,
    pub x_up: Subspace,
    pub x_down: Subspace,
    /// `D₂ = ⟨1, σ_z⟩`.
    pub z: Subspace,
    /// `⟨1, σ_x⟩`.
    pub x: Subspace,
}

pub fn spin_library() -> SpinLibrary {
    let algebra = Powerspace::matrices(2).expect("pair(2)");
    let span = |ms: &[&[&[i64]]]| {
        let ms: Vec<Matrix> = ms.iter().map(|m| Matrix::from_reals(m)).collect();
        algebra.span_matrices(&ms).expect("2×2 matrices")
    };
    SpinLibrary {
        z_up: span(&[&[&[1, 0], &[0, 0]]]),
        z_down: span(&[&[&[0, 0], &[0, 1]]]),
        x_up: span(&[&[&[1, 1], &[1, 1]]]),
        x_down: span(&[&[&[1, -1], &[-1, 1]]]),
        z: span(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, -1]]]),
        x: span(&[&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]]),
        algebra,
    }
}

/// The qubit picture: spin measurements as subspaces of the Hilbert space `ℂ²`.
#[derive(Clone, Debug)]
pub struct QubitSpins {
    pub z_up: Subspace,
    pub z_down: Subspace,
    pub x_up: Subspace,
    pub x_down: Subspace,
}

pub fn qubit_spins() -> QubitSpins {
    let line = |a: i64, b: i64| span_canonicalize_in(2, &[Vector::from_reals(&[a, b])]).expect("dimension 2");
    QubitSpins { z_up: line(1, 0), z_down: line(0, 1), x_up: line(1, 1), x_down: line(1, -1) }
}

/// A coefficient in `{0, ±1, ±i, 1±i}` used by demos and tests.
pub fn gauss(re: i64, im: i64) -> GaussianRational {
    GaussianRational::int(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_linalg::subspace_intersect;

    #[test]
    fn spin_relations() {
        let s = spin_library();
        let a = &s.algebra;
        assert_eq!(subspace_sum(&s.z_up, &s.z_down).unwrap(), s.z);
        assert!(subspace_intersect(&s.z_down, &s.z_up).unwrap().is_zero());
        assert_eq!(a.product(&s.z, &s.z_up).unwrap(), s.z_up);
        assert_eq!(subspace_sum(&s.x_up, &s.x_down).unwrap(), s.x);
        assert_ne!(s.x, s.z);
    }

    #[test]
    fn x_up_times_z_up() {
        let s = spin_library();
        let expected = s.algebra.span_matrices(&[Matrix::from_reals(&[&[1, 0], &[1, 0]])]).unwrap();
        assert_eq!(s.algebra.product(&s.x_up, &s.z_up).unwrap(), expected);
    }

    #[test]
    fn involution_absorbs_scalars() {
        let a = Powerspace::matrices(2).unwrap();
        let f = GroupoidFunction::from_terms(a.groupoid().clone(), &[(1, gauss(1, 1))]);
        let p = a.span(&[f]).unwrap();
        assert_eq!(a.involute(&p).unwrap(), a.iota(ArrowSet::singleton(2)));
    }

    #[test]
    fn stably_gelfand_samples() {
        let a = Powerspace::matrices(2).unwrap();
        let e11 = a.iota(ArrowSet::singleton(0));
        let r = stably_gelfand_element(&a, &e11).unwrap();
        assert!(r.sandwich_leq_p && r.p_leq_sandwich);
        let e12 = a.iota(ArrowSet::singleton(1));
        assert_eq!(stably_gelfand_element(&a, &e12).unwrap().sandwich, e12);
    }
}
