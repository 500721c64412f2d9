use exactalg::factor::{is_irreducible, squarefree_decompose};
use exactalg::poly::from_roots;
use exactalg::{roots_in_tower, AlgError, Field, FieldTower, Gf, Ground, Rationals, UniPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check_axioms<F: Field>(f: &F, rng: &mut ChaCha8Rng, samples: usize) {
    for _ in 0..samples {
        let a = f.random_elem(rng);
        let b = f.random_elem(rng);
        let c = f.random_elem(rng);
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if !f.is_zero(&a) {
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        } else {
            assert!(f.inv(&a).is_none());
        }
    }
}

#[test]
fn field_axioms_on_every_level() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, k) in [(7u32, 6u32), (11, 4), (2, 6), (3, 6)] {
        let t = FieldTower::new(p, k, 2024).unwrap();
        for lvl in 1..=k {
            check_axioms(&t.level(lvl).unwrap(), &mut rng, 1000);
        }
    }
    check_axioms(&Rationals, &mut rng, 1000);
}

#[test]
fn defining_polynomials_are_irreducible() {
    let t = FieldTower::new(7, 6, 99).unwrap();
    let base = t.base();
    for k in 1..=6 {
        let m = UniPoly::from_coeffs(t.defining_polynomial(k).unwrap(), &base);
        assert_eq!(m.degree(), Some(k as usize));
        assert!(is_irreducible(&m, &base));
    }
}

#[test]
fn equal_seeds_give_equal_towers() {
    for seed in [0u64, 1, 77] {
        let a = FieldTower::new(11, 4, seed).unwrap();
        let b = FieldTower::new(11, 4, seed).unwrap();
        for k in 1..=4 {
            assert_eq!(a.defining_polynomial(k).unwrap(), b.defining_polynomial(k).unwrap());
        }
    }
}

#[test]
fn embeddings_commute_and_are_homomorphisms() {
    let t = FieldTower::new(7, 6, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, b, c) in [(1u32, 2u32, 6u32), (1, 3, 6), (2, 2, 4), (1, 2, 4)] {
        let fa = t.level(a).unwrap();
        for _ in 0..200 {
            let x = fa.random_elem(&mut rng);
            let y = fa.random_elem(&mut rng);
            let up = |v: &u32| t.embed(&t.embed(v, a, b).unwrap(), b, c).unwrap();
            assert_eq!(up(&x), t.embed(&x, a, c).unwrap());
            let fc = t.level(c).unwrap();
            assert_eq!(t.embed(&fa.mul(&x, &y), a, c).unwrap(), fc.mul(&up(&x), &up(&y)));
            assert_eq!(t.embed(&fa.add(&x, &y), a, c).unwrap(), fc.add(&up(&x), &up(&y)));
            let z = up(&x);
            assert_eq!(t.descend(&z, c, a), Some(x));
            assert!(t.min_level(&z, c) <= a);
        }
    }
    assert!(matches!(t.embed(&1, 2, 3), Err(AlgError::InvalidArgument(_))));
}

#[test]
fn roots_substitute_to_zero_and_sum_to_degree() {
    let t = FieldTower::new(7, 6, 11).unwrap();
    let base = t.base();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let deg = rng.gen_range(1..=8);
        let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..7)).collect();
        coeffs.push(1);
        let f = UniPoly::from_coeffs(coeffs, &base);
        let r = roots_in_tower(&f, &t, 6).unwrap();
        for root in &r.roots {
            let fl = t.level(root.level).unwrap();
            let fe = t.embed_poly(&f, 1, root.level).unwrap();
            assert_eq!(fe.eval(&root.value, &fl), 0);
        }
        if r.fully_split() {
            assert_eq!(r.total_multiplicity() as usize, deg);
        } else {
            assert_eq!(r.total_multiplicity() as usize + r.unsplit_degree(), deg);
        }
    }
}

#[test]
fn spec_root_examples() {
    let t = FieldTower::new(7, 6, 0).unwrap();
    let base = t.base();
    let cube = UniPoly::from_coeffs(vec![6, 0, 0, 1], &base);
    let r = roots_in_tower(&cube, &t, 1).unwrap();
    let vals: Vec<u32> = r.roots.iter().map(|x| x.value).collect();
    assert_eq!(vals, vec![1, 2, 4]);
    assert!(r.roots.iter().all(|x| x.multiplicity == 1));
    let i2 = UniPoly::from_coeffs(vec![1, 0, 1], &base);
    assert!(roots_in_tower(&i2, &t, 1).unwrap().roots.is_empty());
    assert_eq!(roots_in_tower(&i2, &t, 2).unwrap().roots.len(), 2);
    assert!(matches!(roots_in_tower(&i2, &t, 7), Err(AlgError::Budget { .. })));
}

#[test]
fn squarefree_product_reproduces_input() {
    let f = Gf::prime(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let roots: Vec<u32> = (0..rng.gen_range(1..12)).map(|_| rng.gen_range(0..5)).collect();
        let mut p = from_roots(&roots, &f);
        // a p-th power factor exercises the characteristic-p branch
        p = p.mul(&UniPoly::from_coeffs(vec![2, 0, 0, 0, 0, 1], &f), &f);
        let parts = squarefree_decompose(&p, &f);
        let mut prod = UniPoly::one(&f);
        for (g, m) in &parts {
            assert!(g.gcd(&g.derivative(&f), &f).is_constant());
            prod = prod.mul(&g.pow(*m as u64, &f), &f);
        }
        assert_eq!(prod.monic(&f), p.monic(&f));
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                assert!(parts[i].0.gcd(&parts[j].0, &f).is_constant());
            }
        }
    }
}

#[test]
fn rational_ground_roots() {
    let q = Rationals;
    let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let f = from_roots(&[r(1, 2), r(1, 2), r(-3, 1)], &q).mul(&UniPoly::from_coeffs(vec![r(1, 1), r(0, 1), r(1, 1)], &q), &q);
    let out = exactalg::RationalGround.roots(&f, 1, 1).unwrap();
    assert_eq!(out.roots.len(), 2);
    assert_eq!(out.roots[0].value, r(-3, 1));
    assert_eq!(out.roots[1].multiplicity, 2);
    assert_eq!(out.unsplit, vec![(2, 1)]);
}
