//! Sober spaces from lattices, and quantale constructions.

use mspace::finite_quantale::{
    direct_sum, gelfand_class, is_inverse_quantal_frame, order_isomorphism, verify_quantale, Biproduct,
    FiniteInvolutiveQuantale, FiniteSupLattice, GelfandClass,
};
use mspace::finite_space::{
    alexandrov_space, closure_join_witness, is_sober, is_sober_lattice, random_lattices, sober_witness,
    specialization_order, FiniteTopSpace, SoberWitness,
};
use mspace::groupoid::{quantale_of_groupoid, FiniteGroupoid, Group};
use mspace::{Exec, FiniteQuantale};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Alexandrov spaces of lattices are sober lattices, and joins commute with closure.
    #[test]
    fn lattices_give_sober_lattices(seed in any::<u64>()) {
        for leq in random_lattices(seed, 4, 8) {
            let s = alexandrov_space(&leq).unwrap();
            prop_assert!(is_sober_lattice(&s).holds());
            prop_assert_eq!(closure_join_witness(&s), None);
            // The specialization order recovers the lattice order up to duality.
            let spec = specialization_order(&s);
            let n = leq.len();
            prop_assert!((0..n).all(|a| (0..n).all(|b| spec[a][b] == leq[a][b] || spec[a][b] == leq[b][a])));
        }
    }
}

#[test]
fn small_spaces() {
    assert!(is_sober(&FiniteTopSpace::sierpinski()));
    assert!(is_sober_lattice(&FiniteTopSpace::sierpinski()).holds());
    assert_eq!(sober_witness(&FiniteTopSpace::indiscrete(2).unwrap()), Some(SoberWitness::NotT0 { a: 0, b: 1 }));
    let discrete = FiniteTopSpace::discrete(2).unwrap();
    assert!(is_sober(&discrete));
    assert_eq!(is_sober_lattice(&discrete).witness, Some(serde_json::json!("no bottom")));
}

#[test]
fn groupoid_quantales_are_inverse_quantal_frames() {
    let groupoids = [
        FiniteGroupoid::pair(2).unwrap(),
        FiniteGroupoid::group(&Group::cyclic(3).unwrap()).unwrap(),
        FiniteGroupoid::z2_swap(),
    ];
    for g in &groupoids {
        let q = quantale_of_groupoid(g, 4096).unwrap();
        assert!(verify_quantale(&q, Exec::Sequential).passed());
        assert!(is_inverse_quantal_frame(&q, Exec::Sequential).holds());
        assert!(gelfand_class(&q, Exec::Sequential).class >= GelfandClass::StablyGelfand);
    }
}

#[test]
fn pair_groupoid_quantale_is_the_relation_quantale() {
    let a = quantale_of_groupoid(&FiniteGroupoid::pair(2).unwrap(), 4096).unwrap();
    let b = FiniteInvolutiveQuantale::relations(2).unwrap();
    assert!(order_isomorphism(a.lattice(), b.lattice()).is_some());
    assert_eq!(a.partial_units().len(), b.partial_units().len());
}

#[test]
fn direct_sums_are_biproducts() {
    let l = FiniteInvolutiveQuantale::locale(FiniteSupLattice::chain(3).unwrap());
    let m = FiniteInvolutiveQuantale::relations(1).unwrap();
    let s = direct_sum(&l, &m).unwrap();
    assert!(verify_quantale(&s, Exec::Sequential).passed());
    let bp = Biproduct::of(&l, &m);
    for x in 0..l.size() {
        for y in 0..m.size() {
            let k = bp.pair(x, y);
            assert_eq!((bp.pi1(k), bp.pi2(k)), (x, y));
            assert_eq!(s.join(bp.i1(x), bp.i2(y)), k);
        }
    }
}

#[test]
fn alexandrov_opens_are_up_sets() {
    let chain = FiniteSupLattice::chain(2).unwrap().leq_matrix();
    assert_eq!(alexandrov_space(&chain).unwrap().opens().len(), 3);
    // ∅, {⊤}, {a,⊤}, {b,⊤}, {a,b,⊤}, everything: brute force gives 6.
    let boolean = FiniteSupLattice::powerset(2).unwrap().leq_matrix();
    let s = alexandrov_space(&boolean).unwrap();
    let brute = (0u32..16)
        .filter(|&u| (0..4).all(|a| u >> a & 1 == 0 || (0..4).all(|b| !boolean[a][b] || u >> b & 1 == 1)))
        .count();
    assert_eq!(s.opens().len(), brute);
    assert_eq!(brute, 6);
}

/// Right-sided arrow sets are `r⁻¹(S)`, so `U ↦ r(U)` is the isomorphism onto `P(G₀)`;
/// dually `U ↦ d(U)` for left-sided sets.
#[test]
fn sided_arrow_sets_are_object_sets() {
    use mspace::groupoid::ArrowSet;
    let groupoids = [
        FiniteGroupoid::pair(2).unwrap(),
        FiniteGroupoid::z2_swap(),
        FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap(),
        FiniteGroupoid::disjoint_union(&FiniteGroupoid::pair(2).unwrap(), &FiniteGroupoid::pair(1).unwrap()).unwrap(),
    ];
    for g in &groupoids {
        let all = g.all_arrows();
        let masks = (0..1u128 << g.arrow_count()).map(ArrowSet);
        let right: Vec<ArrowSet> = masks.clone().filter(|&u| g.product(u, all).is_subset(u)).collect();
        let left: Vec<ArrowSet> = masks.filter(|&u| g.product(all, u).is_subset(u)).collect();
        assert_eq!(right.len(), 1 << g.object_count());
        assert_eq!(left.len(), 1 << g.object_count());
        let iso = |sided: &[ArrowSet], f: &dyn Fn(ArrowSet) -> ArrowSet| {
            let images: std::collections::HashSet<_> = sided.iter().map(|&u| f(u)).collect();
            images.len() == sided.len()
                && sided.iter().all(|&u| sided.iter().all(|&v| u.is_subset(v) == f(u).is_subset(f(v))))
        };
        assert!(iso(&right, &|u| g.cod_set(u)));
        assert!(iso(&left, &|u| g.dom_set(u)));
    }
    // On pair(2), d does not separate the right-sided sets r⁻¹{0} and r⁻¹{1}.
    let g = FiniteGroupoid::pair(2).unwrap();
    let all = g.all_arrows();
    let right: Vec<ArrowSet> = (0..16u128).map(ArrowSet).filter(|&u| g.product(u, all).is_subset(u)).collect();
    let d_images: std::collections::HashSet<_> = right.iter().map(|&u| g.dom_set(u)).collect();
    assert!(d_images.len() < right.len());
}
