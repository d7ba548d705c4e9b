//! The convolution *-algebra `ℂG` of a finite groupoid over ℚ(i).
//!
//! For a finite discrete groupoid every function is compactly supported and
//! no completion is needed, so `C_c(G)` is the whole algebra.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{ArrowSet, FiniteGroupoid};
use crate::scalar_linalg::{GaussianRational, Matrix, Vector};

/// `(f⋆h)(x) = Σ_{x=yz} f(y)h(z)` on coordinate slices indexed by arrow id.
pub fn convolve_coords(g: &FiniteGroupoid, f: &[GaussianRational], h: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); g.arrow_count()];
    let h_support = ArrowSet::from_ids((0..h.len()).filter(|&z| !h[z].is_zero()));
    for (y, fy) in f.iter().enumerate() {
        if fy.is_zero() {
            continue;
        }
        for z in h_support.intersection(g.arrows_with_cod(g.dom(y))).ids() {
            let x = g.compose(y, z).expect("typed pair");
            out[x] += &(fy * &h[z]);
        }
    }
    out
}

/// `supp(f ⋆ δ_a ⋆ h)`, or `supp(f ⋆ h)` when `a` is `None`; `fs`, `hs` are the supports.
///
/// An arrow with one factorization `x = y·a·z` has coefficient `f(y)h(z) ≠ 0`;
/// only arrows with several factorizations are summed exactly.
pub fn sandwich_support(
    g: &FiniteGroupoid,
    f: &[GaussianRational],
    fs: ArrowSet,
    a: Option<usize>,
    h: &[GaussianRational],
    hs: ArrowSet,
) -> ArrowSet {
    let mut touched = ArrowSet::EMPTY;
    let mut multi = ArrowSet::EMPTY;
    let pairs = |visit: &mut dyn FnMut(usize, usize, usize)| {
        for y in fs.ids() {
            let ya = match a {
                Some(a) => match g.compose(y, a) {
                    Some(ya) => ya,
                    None => continue,
                },
                None => y,
            };
            for z in hs.intersection(g.arrows_with_cod(g.dom(ya))).ids() {
                visit(y, z, g.compose(ya, z).expect("typed pair"));
            }
        }
    };
    pairs(&mut |_, _, x| {
        if touched.contains(x) {
            multi.insert(x);
        } else {
            touched.insert(x);
        }
    });
    if multi.is_empty() {
        return touched;
    }
    let mut acc = vec![GaussianRational::zero(); g.arrow_count()];
    pairs(&mut |y, z, x| {
        if multi.contains(x) {
            acc[x] += &(&f[y] * &h[z]);
        }
    });
    multi.ids().filter(|&x| acc[x].is_zero()).fold(touched, |t, x| ArrowSet(t.0 & !(1u128 << x)))
}

/// `f*(x) = conj f(x⁻¹)`.
pub fn star_coords(g: &FiniteGroupoid, f: &[GaussianRational]) -> Vec<GaussianRational> {
    (0..g.arrow_count()).map(|x| f[g.inverse(x)].conj()).collect()
}

pub fn support_of(coords: &[GaussianRational]) -> ArrowSet {
    ArrowSet::from_ids(coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k))
}

/// Uniform over `{0, 1, −1, i, −i, 1+i, 1−i}`.
pub fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> GaussianRational {
    const TABLE: [(i64, i64); 7] = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1)];
    let (re, im) = TABLE[rng.random_range(0..TABLE.len())];
    GaussianRational::int(re, im)
}

/// An element of `ℂG`: coefficients indexed by arrow id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunction {
    groupoid: Arc<FiniteGroupoid>,
    coeffs: Vector,
}

impl GroupoidFunction {
    pub fn new(groupoid: Arc<FiniteGroupoid>, coeffs: Vector) -> Result<Self> {
        if coeffs.ambient_dim() != groupoid.arrow_count() {
            return Err(Error::DimensionMismatch { left: groupoid.arrow_count(), right: coeffs.ambient_dim() });
        }
        Ok(Self { groupoid, coeffs })
    }

    pub fn zero(groupoid: Arc<FiniteGroupoid>) -> Self {
        let n = groupoid.arrow_count();
        Self { groupoid, coeffs: Vector::zeros(n) }
    }

    /// `δ_a`.
    pub fn delta(groupoid: Arc<FiniteGroupoid>, a: usize) -> Self {
        let n = groupoid.arrow_count();
        Self { groupoid, coeffs: Vector::unit(n, a) }
    }

    /// `Σ c·δ_a` over `(a, c)` terms; repeated arrows accumulate.
    pub fn from_terms(groupoid: Arc<FiniteGroupoid>, terms: &[(usize, GaussianRational)]) -> Self {
        let mut coords = vec![GaussianRational::zero(); groupoid.arrow_count()];
        for (a, c) in terms {
            coords[*a] += c;
        }
        Self { groupoid, coeffs: Vector::new(coords) }
    }

    pub fn random<R: Rng + ?Sized>(groupoid: Arc<FiniteGroupoid>, rng: &mut R) -> Self {
        let coords = (0..groupoid.arrow_count()).map(|_| random_coefficient(rng)).collect();
        Self { groupoid, coeffs: Vector::new(coords) }
    }

    pub fn groupoid(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoid
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &GaussianRational {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.groupoid, &other.groupoid) || self.groupoid == other.groupoid {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        Ok(Self { groupoid: self.groupoid.clone(), coeffs: self.coeffs.add(&other.coeffs)? })
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { groupoid: self.groupoid.clone(), coeffs: self.coeffs.scale(c) }
    }
}

pub fn convolve(f: &GroupoidFunction, h: &GroupoidFunction) -> Result<GroupoidFunction> {
    f.same_algebra(h)?;
    let coords = convolve_coords(&f.groupoid, f.coeffs.coords(), h.coeffs.coords());
    Ok(GroupoidFunction { groupoid: f.groupoid.clone(), coeffs: Vector::new(coords) })
}

pub fn star(f: &GroupoidFunction) -> GroupoidFunction {
    let coords = star_coords(&f.groupoid, f.coeffs.coords());
    GroupoidFunction { groupoid: f.groupoid.clone(), coeffs: Vector::new(coords) }
}

/// `osupp f = {x | f(x) ≠ 0}`.
pub fn osupp_fn(f: &GroupoidFunction) -> ArrowSet {
    support_of(f.coeffs.coords())
}

/// `δ_a ↦ E_{r(a), d(a)}`; requires a principal transitive groupoid.
pub fn matrix_rep(f: &GroupoidFunction) -> Result<Matrix> {
    let coords = f.groupoid.pair_coordinates()?;
    let n = f.groupoid.object_count();
    let mut m = Matrix::zeros(n, n);
    for (a, &(i, j)) in coords.iter().enumerate() {
        m[(i, j)] = f.coeffs[a].clone();
    }
    Ok(m)
}

/// Inverse of [`matrix_rep`].
pub fn from_matrix(groupoid: Arc<FiniteGroupoid>, m: &Matrix) -> Result<GroupoidFunction> {
    let coords = groupoid.pair_coordinates()?;
    let n = groupoid.object_count();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch { left: n, right: m.nrows() });
    }
    let values = coords.iter().map(|&(i, j)| m[(i, j)].clone()).collect();
    GroupoidFunction::new(groupoid, Vector::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::Group;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::int(re, im)
    }

    #[test]
    fn deltas_compose_like_arrows() {
        let g = Arc::new(FiniteGroupoid::pair(3).unwrap());
        // (0,1)·(1,2) = (0,2); ids x·3 + y.
        let f = GroupoidFunction::delta(g.clone(), 1);
        let h = GroupoidFunction::delta(g.clone(), 5);
        assert_eq!(convolve(&f, &h).unwrap(), GroupoidFunction::delta(g.clone(), 2));
        assert!(convolve(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn z2_idempotents_annihilate() {
        let g = Arc::new(FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap());
        let p = GroupoidFunction::from_terms(g.clone(), &[(0, gr(1, 0)), (1, gr(1, 0))]);
        let q = GroupoidFunction::from_terms(g.clone(), &[(0, gr(1, 0)), (1, gr(-1, 0))]);
        let pq = convolve(&p, &q).unwrap();
        assert!(pq.is_zero());
        assert_eq!(osupp_fn(&pq), ArrowSet::EMPTY);
        assert_eq!(osupp_fn(&p), ArrowSet(0b11));
    }

    #[test]
    fn star_conjugates() {
        let g = Arc::new(FiniteGroupoid::pair(2).unwrap());
        let f = GroupoidFunction::from_terms(g.clone(), &[(1, gr(0, 1))]);
        assert_eq!(star(&f), GroupoidFunction::from_terms(g, &[(2, gr(0, -1))]));
    }

    #[test]
    fn matrix_rep_requires_pair_shape() {
        let g = Arc::new(FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap());
        assert_eq!(matrix_rep(&GroupoidFunction::zero(g)), Err(Error::NotPairGroupoid));
    }
}
