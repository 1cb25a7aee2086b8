//! Randomized algebraic laws for field arithmetic and subspaces.

use ghw_core::*;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just((3, 3)), Just((3, 4)), Just((5, 3)), Just((7, 2))]
        .prop_map(|(p, m)| FieldSpec::new(p, m).unwrap())
}

proptest! {
    #[test]
    fn field_laws(spec in field(), i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let q = spec.order() as u64;
        let (a, b, c) = (spec.from_index(i % q), spec.from_index(j % q), spec.from_index(k % q));
        prop_assert_eq!(spec.mul(&a, &spec.add(&b, &c)), spec.add(&spec.mul(&a, &b), &spec.mul(&a, &c)));
        prop_assert_eq!(spec.mul(&a, &b), spec.mul(&b, &a));
        let t = spec.prime_field().add(spec.trace(&a).0, spec.trace(&b).0);
        prop_assert_eq!(spec.trace(&spec.add(&a, &b)).0, t);
        if !a.is_zero() {
            prop_assert_eq!(spec.mul(&a, &spec.inv(&a).unwrap()), spec.one());
        }
    }

    #[test]
    fn dimension_formula(rows in prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..8), split in 0usize..8) {
        let fp = PrimeField::new(3).unwrap();
        let split = split.min(rows.len());
        let u = Subspace::canonicalize(fp, 4, &rows[..split]).unwrap();
        let w = Subspace::canonicalize(fp, 4, &rows[split..]).unwrap();
        let again = Subspace::canonicalize(fp, 4, u.basis()).unwrap();
        prop_assert_eq!(&again, &u);
        prop_assert_eq!(u.sum(&w).dim() + u.intersect(&w).dim(), u.dim() + w.dim());
        prop_assert!(u.intersect(&w).is_subspace_of(&u));
    }
}
