//! Observer maps on small carriers, with hand-computed expectations.

use std::sync::Arc;

use mspace::finite_quantale::{FiniteInvolutiveQuantale, FiniteSupLattice};
use mspace::groupoid::{ArrowSet, ArrowSetQuantale, FiniteGroupoid, Group};
use mspace::linear_powerspace::{zero_pattern_retraction, Powerspace};
use mspace::observer::{
    base_observer, build_canonical_observer, local_observer_of_groupoid, local_observer_of_iqf, powerspace_population,
    pseudogroup_correspondence, verify_observer, IdentityObserver, ObserverMap, Suite, SweepConfig,
};
use mspace::{Error, Exec, InvolutiveQuantale, Status};

const PERSISTENCY: &str = "persistency r(mι(ω)n) = r(m)ωr(n)";

fn cfg() -> SweepConfig {
    SweepConfig { samples: 64, ..SweepConfig::default() }
}

fn z2() -> Arc<FiniteGroupoid> {
    Arc::new(FiniteGroupoid::group(&Group::cyclic(2).unwrap()).unwrap())
}

fn pair(n: usize) -> Arc<FiniteGroupoid> {
    Arc::new(FiniteGroupoid::pair(n).unwrap())
}

#[test]
fn identity_observer_passes_every_suite() {
    let q = Arc::new(FiniteInvolutiveQuantale::relations(2).unwrap());
    let r = verify_observer(&IdentityObserver::new(q), &Suite::ALL, &cfg()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.status_of(PERSISTENCY), Some(Status::Pass));
}

#[test]
fn local_observer_of_relations() {
    let q = Arc::new(FiniteInvolutiveQuantale::relations(2).unwrap());
    let o = local_observer_of_iqf(q, Exec::Sequential).unwrap();
    assert_eq!(o.domain_population(&cfg()).len(), 16);
    // {(1,2), (1,1)} on points {1, 2}: bits 1 and 0.
    assert_eq!(o.retract(&0b0011), 0b0001);
    let r = verify_observer(&o, &[Suite::Axioms], &cfg()).unwrap();
    assert!(r.passed(), "{r}");
    // Not persistent: r(δ₁₂ e δ₂₁) = r(δ₁₁) = {(1,1)} while r(δ₁₂) = 0.
    let r = verify_observer(&o, &[Suite::Persistency], &cfg()).unwrap();
    assert_eq!(r.status_of(PERSISTENCY), Some(Status::Fail));
}

#[test]
fn local_observer_refuses_non_frames() {
    let chain = FiniteInvolutiveQuantale::from_lattice(
        FiniteSupLattice::chain(3).unwrap(),
        |a, b| usize::from(a == 2 && b == 2),
        |a| a,
        None,
    )
    .unwrap();
    let err = local_observer_of_iqf(Arc::new(chain), Exec::Sequential).unwrap_err();
    assert_eq!(err, Error::NotInverseQuantalFrame("unital".into()));
}

#[test]
fn local_observer_of_arrow_sets() {
    let o = local_observer_of_groupoid(pair(2));
    let r = verify_observer(&o, &[Suite::Axioms], &cfg()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn base_observer_is_an_observer_map() {
    for g in [pair(2), z2()] {
        let r = verify_observer(&base_observer(g), &[Suite::Axioms], &cfg()).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn z2_persistency_witness() {
    let o = build_canonical_observer(z2());
    let r = verify_observer(&o, &[Suite::Persistency], &SweepConfig::default()).unwrap();
    let w = r.check(PERSISTENCY).unwrap().witness.clone().unwrap();
    assert_eq!(w["index"], serde_json::json!([4, 1, 5]));
    assert_eq!(w["lhs"], serde_json::json!([]));
    assert_eq!(w["rhs"], serde_json::json!(["e", "g"]));
}

/// Persistency composes: r(m ι(ω) n ι(ω') k) = r(m) ω r(n) ω' r(k).
#[test]
fn persistency_iterates_to_depth_two() {
    let g = pair(2);
    let o = build_canonical_observer(g.clone());
    let (alg, c) = (o.domain(), o.codomain());
    let pop = powerspace_population(alg, &SweepConfig { samples: 8, threshold: 16, ..cfg() });
    let ms: Vec<_> = pop.elements().iter().step_by(3).take(6).cloned().collect();
    let omegas = [g.units(), g.all_arrows(), ArrowSet::singleton(1)];
    for m in &ms {
        for n in &ms {
            for k in &ms {
                for w in &omegas {
                    for w2 in &omegas {
                        let inner = alg.mul3(m, &alg.iota(*w), n);
                        let lhs = o.retract(&alg.mul3(&inner, &alg.iota(*w2), k));
                        let rhs = c.mul3(&c.mul3(&o.retract(m), w, &o.retract(n)), w2, &o.retract(k));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn zero_pattern_retraction_is_iota_of_osupp() {
    let alg = Powerspace::matrices(2).unwrap();
    let pop = powerspace_population(&alg, &SweepConfig { samples: 32, ..cfg() });
    for v in pop.elements() {
        assert_eq!(zero_pattern_retraction(&alg, v).unwrap(), alg.iota(alg.osupp(v)));
    }
}

#[test]
fn pseudogroup_counts() {
    for (n, size) in [(1, 2), (2, 7), (3, 34)] {
        let r = pseudogroup_correspondence(pair(n), &cfg()).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.notes["bijection"], serde_json::json!(format!("{size} ↔ {size} bijection verified")));
    }
    assert_eq!(pseudogroup_correspondence(z2(), &cfg()).unwrap_err(), Error::NotPrincipal(0));
}

#[test]
fn populations_are_seeded() {
    let alg = Powerspace::new(pair(2));
    let a = powerspace_population(&alg, &cfg());
    let b = powerspace_population(&alg, &cfg());
    let c = powerspace_population(&alg, &SweepConfig { seed: 1, ..cfg() });
    assert_eq!(a.elements(), b.elements());
    assert_eq!(a.structured(), c.structured());
    assert_ne!(a.elements(), c.elements());
    // 16 deltas, then the {0, ±1} spans that are new.
    assert_eq!(a.summary()["delta"], serde_json::json!(16));
}

#[test]
fn arrow_set_quantale_is_unital_with_units_as_unit() {
    let g = pair(2);
    let q = ArrowSetQuantale::new(g.clone());
    assert_eq!(q.unit(), Some(g.units()));
}

mod seeded {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        /// The observer laws hold on every seeded population, not just the default one.
        #[test]
        fn canonical_observer_laws_for_any_seed(seed in any::<u64>()) {
            let cfg = SweepConfig { seed, samples: 24, exec: Exec::Sequential, ..SweepConfig::default() };
            for g in [pair(2), z2()] {
                let r = verify_observer(&build_canonical_observer(g), &[Suite::Axioms, Suite::Increasing], &cfg).unwrap();
                prop_assert!(r.passed(), "{}", r);
            }
        }

        #[test]
        fn retraction_inverts_iota(mask in 0u128..16) {
            let o = build_canonical_observer(pair(2));
            let u = ArrowSet(mask);
            prop_assert_eq!(o.retract(&o.iota(&u)), u);
        }
    }
}
