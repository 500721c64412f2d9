use chow::symbol::{Idx, Lin, Name, Top};
use chow::{degree_polynomial, normalize, normalize_with, parse, Bindings, Class, Coef, Expr, Model};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn leaf(pair: bool) -> BoxedStrategy<Expr> {
    let common = vec![
        Just(Expr::lin(Lin::E(Idx::One(1)))),
        Just(Expr::lin(Lin::E(Idx::One(2)))),
        Just(Expr::lin(Lin::E(Idx::All))),
        Just(Expr::Sym(chow::symbol::Symbol::XiS)),
        Just(Expr::top(Top::Pt)),
        Just(Expr::param("N")),
        Just(Expr::param("g")),
    ];
    let specific = if pair {
        vec![
            Just(Expr::lin(Lin::A1xC2)),
            Just(Expr::lin(Lin::C1xA2)),
            Just(Expr::lin(Lin::F(Idx::One(1)))),
            Just(Expr::lin(Lin::F(Idx::All))),
            Just(Expr::param("e1")),
            Just(Expr::param("r")),
        ]
    } else {
        vec![
            Just(Expr::d("a")),
            Just(Expr::d("b")),
            Just(Expr::d("K_C")),
            Just(Expr::lin(Lin::Delta0)),
            Just(Expr::top(Top::Delta(Name::new("a")))),
            Just(Expr::top(Top::Pair2(Name::new("b")))),
            Just(Expr::param("e")),
        ]
    };
    let syms = prop::sample::select(common.into_iter().chain(specific).map(|j| j.0).collect::<Vec<_>>());
    prop_oneof![3 => syms, 1 => (0i64..5).prop_map(Expr::num)].boxed()
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    any::<bool>().prop_flat_map(|pair| {
        leaf(pair).prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(b)),
                inner.prop_map(|a| a.neg()),
            ]
        })
    })
}

fn class(e: &Expr) -> Class {
    normalize(e).unwrap().class
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normalization_is_confluent(e in expr_strategy(), seed in any::<u64>()) {
        let reference = class(&e);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..3 {
            let got = normalize_with(&e, None, &mut |n| rng.gen_range(0..n)).unwrap().class;
            prop_assert_eq!(&got, &reference);
        }
    }

    #[test]
    fn normalization_is_idempotent_and_commutative(x in expr_strategy(), y in expr_strategy()) {
        let n = class(&x);
        let model = chow::normal::infer_model(&x);
        prop_assert_eq!(&chow::normalize_in(&n.to_expr(), model).unwrap().class, &n);
        let printed = parse(&n.to_string()).unwrap();
        prop_assert_eq!(&chow::normalize_in(&printed, model).unwrap().class, &n);
        let xy = normalize(&x.clone().mul(y.clone()));
        let yx = normalize(&y.clone().mul(x.clone()));
        match (xy, yx) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.class, b.class),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "one order failed"),
        }
    }

    #[test]
    fn printing_round_trips(e in expr_strategy()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn evaluation_is_linear(x in expr_strategy(), y in expr_strategy(), a in -4i64..5, b in -4i64..5) {
        prop_assume!(chow::normal::infer_model(&x) == chow::normal::infer_model(&y));
        let bind = Bindings::new().with("deg[b]", 3);
        let deg = |e: &Expr| degree_polynomial(&class(e).grade(2), &bind).unwrap();
        let combo = x.clone().scaled(a).add(y.clone().scaled(b));
        let lhs = deg(&combo);
        let rhs = deg(&x).mul(&Coef::int(a)).add(&deg(&y).mul(&Coef::int(b)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn symmetrization_of_a_difference_of_divisors() {
    // c(E) = (1 + D_a1 + Delta0 + a1^[2]) (1 - D_a2 + a2^[2]) expanded in the engine
    let prod = parse("(1 + D[a1] + Delta0 + pair2[a1])*(1 - D[a2] + pair2[a2])").unwrap();
    let c = class(&prod);
    let c1 = class(&parse("Delta0 + D[a1] - D[a2]").unwrap());
    let c2 = class(&parse("pair2[a1] + pair2[a2] + delta[a2] - D[a1]*D[a2]").unwrap());
    assert_eq!(c.grade(1), c1);
    assert_eq!(c.grade(2), c2);
    let b = Bindings::parse("e1=5,e2=3").unwrap();
    assert_eq!(chow::evaluate(&c.grade(2), &b).unwrap(), chow::evaluate(&c2, &b).unwrap());
}

#[test]
fn residue_pair_without_meeting_points() {
    let r = chow::residue_surface_classes(Model::Pair, false).unwrap();
    assert_eq!(r.xi.to_string(), "2*A1xC2 + 2*C1xA2 - E[*]");
    assert!(r.checks.iter().all(|(_, ok)| *ok));
}
