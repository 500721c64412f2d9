use exactalg::{Field, Gf, MultiPoly};
use proptest::prelude::*;

fn poly_strategy() -> impl Strategy<Value = Vec<(Vec<u32>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), 0u32..13), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let f = Gf::prime(13).unwrap();
        let (a, b, c) = (
            MultiPoly::from_terms(3, a, &f),
            MultiPoly::from_terms(3, b, &f),
            MultiPoly::from_terms(3, c, &f),
        );
        prop_assert_eq!(a.mul(&b, &f).mul(&c, &f), a.mul(&b.mul(&c, &f), &f));
        prop_assert_eq!(a.mul(&b.add(&c, &f), &f), a.mul(&b, &f).add(&a.mul(&c, &f), &f));
        prop_assert_eq!(a.mul(&b, &f), b.mul(&a, &f));
        prop_assert!(a.sub(&a, &f).is_zero());
        prop_assert!(a.terms().all(|(_, c)| !f.is_zero(c)));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&b, &f).div_exact(&b, &f), Some(a.clone()));
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), pt in prop::collection::vec(0u32..13, 3)) {
        let f = Gf::prime(13).unwrap();
        let (a, b) = (MultiPoly::from_terms(3, a, &f), MultiPoly::from_terms(3, b, &f));
        prop_assert_eq!(a.mul(&b, &f).eval(&pt, &f), f.mul(&a.eval(&pt, &f), &b.eval(&pt, &f)));
        prop_assert_eq!(a.add(&b, &f).eval(&pt, &f), f.add(&a.eval(&pt, &f), &b.eval(&pt, &f)));
    }

    #[test]
    fn degree_is_max_exponent(a in poly_strategy()) {
        let f = Gf::prime(13).unwrap();
        let p = MultiPoly::from_terms(3, a, &f);
        for v in 0..3 {
            prop_assert_eq!(p.degree_in(v), p.terms().map(|(e, _)| e[v]).max());
        }
    }
}
