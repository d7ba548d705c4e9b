//! *-algebra laws of ℂG and the exact support shortcut, by property.

use std::sync::Arc;

use mspace::groupoid::{ArrowSet, FiniteGroupoid, Group};
use mspace::groupoid_algebra::{
    convolve, convolve_coords, matrix_rep, sandwich_support, star, support_of, GroupoidFunction,
};
use mspace::scalar_linalg::GaussianRational;
use proptest::prelude::*;

fn groupoids() -> Vec<Arc<FiniteGroupoid>> {
    let union = FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2).unwrap(), &FiniteGroupoid::pair(1).unwrap());
    vec![
        Arc::new(FiniteGroupoid::pair(3).unwrap()),
        Arc::new(FiniteGroupoid::group(&Group::symmetric3()).unwrap()),
        Arc::new(FiniteGroupoid::z2_swap()),
        Arc::new(union.unwrap()),
    ]
}

/// A groupoid index and coefficient codes; zeros are common so supports vary.
fn functions() -> impl Strategy<Value = (usize, Vec<[(i64, i64); 3]>)> {
    (0..4usize, prop::collection::vec(prop::array::uniform3((-1i64..=1, -1i64..=1)), 9))
}

fn build(g: &Arc<FiniteGroupoid>, codes: &[[(i64, i64); 3]], slot: usize) -> GroupoidFunction {
    let terms: Vec<(usize, GaussianRational)> = (0..g.arrow_count())
        .map(|a| {
            let (re, im) = codes[a % codes.len()][slot];
            (a, GaussianRational::int(re * ((a / codes.len()) as i64 + 1), im))
        })
        .collect();
    GroupoidFunction::from_terms(g.clone(), &terms)
}

proptest! {
    #[test]
    fn star_algebra_axioms((k, codes) in functions()) {
        let g = &groupoids()[k];
        let (f, h, l) = (build(g, &codes, 0), build(g, &codes, 1), build(g, &codes, 2));
        let mul = |a: &GroupoidFunction, b: &GroupoidFunction| convolve(a, b).unwrap();
        prop_assert_eq!(mul(&mul(&f, &h), &l), mul(&f, &mul(&h, &l)));
        prop_assert_eq!(mul(&f, &h.add(&l).unwrap()), mul(&f, &h).add(&mul(&f, &l)).unwrap());
        prop_assert_eq!(star(&star(&f)), f.clone());
        prop_assert_eq!(star(&mul(&f, &h)), mul(&star(&h), &star(&f)));
        let i = GaussianRational::i();
        prop_assert_eq!(star(&f.scale(&i)), star(&f).scale(&i.conj()));
    }

    /// The shortcut against full convolution.
    #[test]
    fn sandwich_support_matches_convolution((k, codes) in functions(), a in 0..16usize) {
        let g = &groupoids()[k];
        let (f, h) = (build(g, &codes, 0), build(g, &codes, 1));
        let (fc, hc) = (f.coeffs().coords(), h.coeffs().coords());
        let (fs, hs) = (support_of(fc), support_of(hc));
        let plain = support_of(&convolve_coords(g, fc, hc));
        prop_assert_eq!(sandwich_support(g, fc, fs, None, hc, hs), plain);
        let a = a % g.arrow_count();
        let delta = GroupoidFunction::delta(g.clone(), a);
        let oracle = support_of(&convolve_coords(g, &convolve_coords(g, fc, delta.coeffs().coords()), hc));
        prop_assert_eq!(sandwich_support(g, fc, fs, Some(a), hc, hs), oracle);
    }
}

#[test]
fn matrix_units_multiply_like_arrows() {
    let g = Arc::new(FiniteGroupoid::pair(3).unwrap());
    for a in 0..9 {
        for b in 0..9 {
            let prod =
                convolve(&GroupoidFunction::delta(g.clone(), a), &GroupoidFunction::delta(g.clone(), b)).unwrap();
            let expected = match g.compose(a, b) {
                Some(c) => GroupoidFunction::delta(g.clone(), c),
                None => GroupoidFunction::zero(g.clone()),
            };
            assert_eq!(prod, expected);
            let rep = matrix_rep(&prod).unwrap();
            assert_eq!(
                rep,
                matrix_rep(&GroupoidFunction::delta(g.clone(), a))
                    .unwrap()
                    .mul(&matrix_rep(&GroupoidFunction::delta(g.clone(), b)).unwrap())
                    .unwrap()
            );
        }
    }
}

#[test]
fn group_algebra_idempotents() {
    // In ℂℤ₂, (e ± g)/2 are orthogonal idempotents; their supports are the whole group.
    let g = Arc::new(FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap());
    let half = GaussianRational::new("1/2".parse().unwrap(), "0".parse().unwrap());
    let p = GroupoidFunction::from_terms(g.clone(), &[(0, half.clone()), (1, half.clone())]);
    let q = GroupoidFunction::from_terms(g.clone(), &[(0, half.clone()), (1, -half)]);
    assert_eq!(convolve(&p, &p).unwrap(), p);
    assert!(convolve(&p, &q).unwrap().is_zero());
    assert_eq!(support_of(p.coeffs().coords()), ArrowSet::all(2));
}
