use exactalg::resultant::{resultant, resultant_in};
use exactalg::{eliminate, AlgError, Field, Gf, MultiPoly, UniPoly};
use proptest::prelude::*;

fn bivariate(f: &Gf, coeffs: &[(u32, u32, u32)]) -> MultiPoly<u32> {
    MultiPoly::from_terms(2, coeffs.iter().map(|&(a, b, c)| (vec![a, b], c)), f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_of_polynomial_with_itself_vanishes(cs in prop::collection::vec(0u32..101, 2..8)) {
        let f = Gf::prime(101).unwrap();
        let mut cs = cs;
        cs.push(1);
        let p = UniPoly::from_coeffs(cs, &f);
        prop_assert_eq!(resultant(&p, &p, &f), 0);
    }

    #[test]
    fn linear_resultant_is_difference(a in 0u32..101, b in 0u32..101) {
        let f = Gf::prime(101).unwrap();
        let la = UniPoly::from_coeffs(vec![f.neg(&a), 1], &f);
        let lb = UniPoly::from_coeffs(vec![f.neg(&b), 1], &f);
        let r = resultant(&la, &lb, &f);
        prop_assert!(r == f.sub(&b, &a) || r == f.sub(&a, &b));
        prop_assert_eq!(r == 0, a == b);
    }

    #[test]
    fn degree_bounded_by_bezout(
        cf in prop::collection::vec((0u32..4, 0u32..4, 0u32..101), 3..12),
        cg in prop::collection::vec((0u32..4, 0u32..4, 0u32..101), 3..12),
    ) {
        // total degree at most 3 after keeping a <= 3 - b
        let f = Gf::prime(101).unwrap();
        let pf = bivariate(&f, &cf.into_iter().filter(|(a, b, _)| a + b <= 3).collect::<Vec<_>>());
        let pg = bivariate(&f, &cg.into_iter().filter(|(a, b, _)| a + b <= 2).collect::<Vec<_>>());
        prop_assume!(!pf.is_zero() && !pg.is_zero());
        prop_assume!(pf.degree_in(0).unwrap() + pg.degree_in(0).unwrap() > 0);
        let r = eliminate(&pf, &pg, 0, &f).unwrap();
        if let Some(d) = r.total_degree() {
            prop_assert!(d <= 6);
        }
    }

    #[test]
    fn resultant_vanishes_at_common_roots(a in 1u32..101, b in 1u32..101, c in 0u32..101) {
        // f, g in (x, y) sharing the point (x, y) = (a, b)
        let f = Gf::prime(101).unwrap();
        let x = MultiPoly::var(2, 0, &f);
        let y = MultiPoly::var(2, 1, &f);
        let xa = x.sub(&MultiPoly::constant(2, a, &f), &f);
        let yb = y.sub(&MultiPoly::constant(2, b, &f), &f);
        let pf = xa.mul(&x, &f).add(&yb.mul(&y, &f), &f);
        let pg = xa.mul(&y.add(&MultiPoly::constant(2, c, &f), &f), &f).add(&yb.pow(2, &f), &f);
        let r = eliminate(&pf, &pg, 0, &f).unwrap();
        prop_assert_eq!(r.eval(&[0, b], &f), 0);
    }
}

#[test]
fn generic_bezout_equality() {
    // random dense cubic and conic in (x, y): the resultant in x has degree 6 in y
    let f = Gf::prime(10007).unwrap();
    let mut seed = 12345u64;
    let mut next = || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((seed >> 33) % 10007) as u32
    };
    let mut terms_f = Vec::new();
    let mut terms_g = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=(3 - a) {
            terms_f.push((a, b, next()));
            if a + b <= 2 {
                terms_g.push((a, b, next()));
            }
        }
    }
    let pf = bivariate(&f, &terms_f);
    let pg = bivariate(&f, &terms_g);
    let r = eliminate(&pf, &pg, 0, &f).unwrap();
    assert_eq!(r.degree_in(1), Some(6));
    assert_eq!(resultant_in(&pf, 3, &pg, 2, 0, &f), r);
}

#[test]
fn zero_input_is_rejected() {
    let f = Gf::prime(7).unwrap();
    let x = MultiPoly::var(2, 0, &f);
    assert!(matches!(eliminate(&MultiPoly::zero(2), &x, 0, &f), Err(AlgError::InvalidArgument(_))));
    let y = MultiPoly::var(2, 1, &f);
    assert!(matches!(eliminate(&y, &y, 0, &f), Err(AlgError::InvalidArgument(_))));
}
