//! Field laws of ℚ(i) and lattice laws of subspaces, by property.

use mspace::scalar_linalg::{
    span_canonicalize_in, subspace_intersect, subspace_leq, subspace_sum, GaussianRational, Rational, Subspace, Vector,
};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::new(Rational::new(a, b), Rational::new(c, d)))
}

const DIM: usize = 3;

fn subspace() -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec((-1i64..=1, -1i64..=1), DIM), 0..=DIM).prop_map(|rows| {
        let vs: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(r)).collect();
        span_canonicalize_in(DIM, &vs).unwrap()
    })
}

proptest! {
    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if let Some(inv) = a.inverse() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn scalars_round_trip_through_text(a in scalar()) {
        let back: GaussianRational = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn echelon_form_is_canonical(p in subspace()) {
        prop_assert!(p.is_canonical());
        let again = span_canonicalize_in(DIM, &p.basis().collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(&again, &p);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Subspace>(&json).unwrap(), p);
    }

    #[test]
    fn lattice_laws(p in subspace(), q in subspace(), r in subspace()) {
        let join = |a: &Subspace, b: &Subspace| subspace_sum(a, b).unwrap();
        let meet = |a: &Subspace, b: &Subspace| subspace_intersect(a, b).unwrap();
        prop_assert_eq!(join(&p, &q), join(&q, &p));
        prop_assert_eq!(meet(&p, &q), meet(&q, &p));
        prop_assert_eq!(join(&p, &meet(&p, &q)), p.clone());
        prop_assert_eq!(meet(&p, &join(&p, &q)), p.clone());
        prop_assert_eq!(join(&join(&p, &q), &r), join(&p, &join(&q, &r)));
        prop_assert!(subspace_leq(&meet(&p, &q), &p).unwrap());
        prop_assert_eq!(p.dim() + q.dim(), join(&p, &q).dim() + meet(&p, &q).dim());
    }

    /// `P ≤ R ⇒ P ∨ (Q ∧ R) = (P ∨ Q) ∧ R`.
    #[test]
    fn modular_law(p in subspace(), q in subspace(), r in subspace()) {
        let r = subspace_sum(&p, &r).unwrap();
        let lhs = subspace_sum(&p, &subspace_intersect(&q, &r).unwrap()).unwrap();
        let rhs = subspace_intersect(&subspace_sum(&p, &q).unwrap(), &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn subspace_lattice_is_not_distributive() {
    let line = |v: &[i64]| span_canonicalize_in(2, &[Vector::from_reals(v)]).unwrap();
    let (x, y, d) = (line(&[1, 0]), line(&[0, 1]), line(&[1, 1]));
    let lhs = subspace_intersect(&d, &subspace_sum(&x, &y).unwrap()).unwrap();
    let rhs = subspace_sum(&subspace_intersect(&d, &x).unwrap(), &subspace_intersect(&d, &y).unwrap()).unwrap();
    assert_eq!(lhs, d);
    assert!(rhs.is_zero());
}
