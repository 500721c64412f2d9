use chow::derive::{pair_count_formula, secant_count_formula};
use chow::{derive_pair_count, derive_secant_count, relation_degree_check, Relation};
use num_bigint::BigInt;

#[test]
fn single_curve_counts_over_the_full_range() {
    for e in 2..=12 {
        for g in 0..=10 {
            let d = derive_secant_count(e, g).unwrap();
            assert!(d.matched, "e={e} g={g}");
            assert_eq!(d.value, secant_count_formula(e, g));
            assert_eq!(d.normal_form, "5*pair2[a] - 5*delta[a] - 3*delta[K_C]");
        }
    }
}

#[test]
fn pair_counts() {
    for e1 in 1..=8 {
        for e2 in 1..=8 {
            for r in 0..=4 {
                let d = derive_pair_count(e1, e2, r).unwrap();
                assert!(d.matched);
                assert_eq!(d.value, pair_count_formula(e1, e2, r));
            }
        }
    }
    let d = derive_pair_count(2, 3, 1).unwrap();
    assert!(d.expanded.contains("6*F[*]*F[*]"), "{}", d.expanded);
    assert_eq!(d.value, BigInt::from(24));
}

#[test]
fn trace_reproduces_the_worked_computation() {
    let d = derive_secant_count(4, 1).unwrap();
    let lines = d.trace.join("\n");
    assert!(lines.contains("= 2*D[a]*D[a] + 7*D[a]*Delta0 + 6*Delta0*Delta0 + pair2[a]"));
    assert!(lines.contains("rule D[a]*D[a] -> delta[a] + 2*pair2[a]"));
    assert!(lines.contains("rule D[a]*Delta0 -> -delta[a]"));
    assert!(lines.contains("rule 6*Delta0*Delta0 -> -3*delta[K_C]"));
    assert!(lines.contains("= 5*pair2[a] - 5*delta[a] - 3*delta[K_C]"));
    assert_eq!(d.value, BigInt::from(10));
}

#[test]
fn relations_pass_on_their_ranges() {
    for rel in [Relation::SingleCurve, Relation::Pair, Relation::LineMeeting] {
        let rows = relation_degree_check(rel, &rel.default_ranges());
        assert!(rows.iter().all(|r| r.pass), "{}", rel.label());
    }
}
