use std::sync::OnceLock;

use cubisect::curves::RationalCurve;
use cubisect::fano::enumerate_lines;
use cubisect::fixtures::{skew_lines_threefold, SkewLinesFixture};
use cubisect::secant::{count_secants_pair, count_secants_single, SecantReport};
use cubisect::space::{field, plucker_relations_hold, point, ProjLine};
use exactalg::{Field, FieldTower};
use proptest::prelude::*;

struct Setup {
    fx: SkewLinesFixture<FieldTower>,
    census: Vec<ProjLine<u32>>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let fx = skew_lines_threefold(7, 1).unwrap();
        let census = enumerate_lines(&fx.cubic, 1).unwrap().lines;
        Setup { fx, census }
    })
}

fn lines_with_mult(r: &SecantReport<u32>) -> Vec<(ProjLine<u32>, u64)> {
    let mut v: Vec<_> = r.lines.iter().map(|s| (s.line.clone(), s.multiplicity)).collect();
    v.sort();
    v
}

fn sound(r: &SecantReport<u32>, a: &RationalCurve<u32>, b: &RationalCurve<u32>) {
    let s = setup();
    let g = s.fx.cubic.ground();
    for l in &r.lines {
        assert!(l.verified);
        assert!(s.fx.cubic.contains_line(&l.line).unwrap());
        if let Some((lvl, z, w)) = &l.params {
            let p = point(g, *lvl, &a.eval(g, *lvl, z).unwrap()).unwrap();
            let q = point(g, *lvl, &b.eval(g, *lvl, w).unwrap()).unwrap();
            assert!(l.line.contains_point(g, &p).unwrap());
            assert!(l.line.contains_point(g, &q).unwrap());
        }
    }
}

fn mobius() -> impl Strategy<Value = [u32; 4]> {
    [0u32..7, 0u32..7, 0u32..7, 0u32..7].prop_filter("invertible", |m| (m[0] * m[3] + 49 - m[1] * m[2]) % 7 != 0)
}

#[test]
fn census_lines_lie_on_the_cubic_with_valid_plucker_coordinates() {
    let s = setup();
    let g = s.fx.cubic.ground();
    let f = field(g, 1).unwrap();
    assert!(s.census.contains(&s.fx.l0) && s.census.contains(&s.fx.l1));
    for l in &s.census {
        assert!(s.fx.cubic.contains_line(l).unwrap());
        assert!(plucker_relations_hold(&l.plucker(g).unwrap(), 4, &f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conic_secants_survive_reparametrization(m in mobius()) {
        let s = setup();
        let f = field(s.fx.cubic.ground(), 1).unwrap();
        let c = s.fx.conic.reparametrize(&m, &f);
        let base = count_secants_single(&s.fx.cubic, &s.fx.conic, 0).unwrap();
        let moved = count_secants_single(&s.fx.cubic, &c, 0).unwrap();
        prop_assert_eq!(lines_with_mult(&base), lines_with_mult(&moved));
    }

    #[test]
    fn pair_secants_are_sound_and_symmetric(i in 0usize..10_000, m in mobius()) {
        let s = setup();
        let g = s.fx.cubic.ground();
        let f = field(g, 1).unwrap();
        let l = &s.census[i % s.census.len()];
        prop_assume!(*l != s.fx.l0);
        let a = RationalCurve::from_line(g, l).unwrap().reparametrize(&m, &f);
        let b = s.fx.conic.clone();
        let ab = count_secants_pair(&s.fx.cubic, &a, &b, 0).unwrap();
        let ba = count_secants_pair(&s.fx.cubic, &b, &a, 0).unwrap();
        sound(&ab, &a, &b);
        sound(&ba, &b, &a);
        prop_assert_eq!(lines_with_mult(&ab), lines_with_mult(&ba));
        prop_assert_eq!(ab.count_with_multiplicity + ab.unsplit_degree as u64, ba.count_with_multiplicity + ba.unsplit_degree as u64);
    }

    #[test]
    fn reports_are_deterministic(seed in 0u64..1000) {
        let s = setup();
        let g = s.fx.cubic.ground();
        let a = RationalCurve::from_line(g, &s.fx.l1).unwrap();
        let one = format!("{:?}", count_secants_pair(&s.fx.cubic, &a, &s.fx.conic, seed).unwrap());
        let two = format!("{:?}", count_secants_pair(&s.fx.cubic, &a, &s.fx.conic, seed).unwrap());
        prop_assert_eq!(one, two);
        let c1 = count_secants_single(&s.fx.cubic, &s.fx.conic, seed).unwrap();
        sound(&c1, &s.fx.conic, &s.fx.conic);
        prop_assert_eq!(format!("{c1:?}"), format!("{:?}", count_secants_single(&s.fx.cubic, &s.fx.conic, seed).unwrap()));
    }
}

#[test]
fn lines_through_points_total_six_on_the_fixture() {
    let s = setup();
    let g = s.fx.cubic.ground();
    let f = field(g, 1).unwrap();
    let mut checked = 0;
    for l in s.census.iter().take(40) {
        let p = l.basis_at(g, 1).unwrap();
        let v: Vec<u32> = p[0].iter().zip(&p[1]).map(|(x, y)| f.add(x, &f.mul(&3, y))).collect();
        let pt = point(g, 1, &v).unwrap();
        if s.fx.cubic.is_singular_point(&pt).unwrap() {
            continue;
        }
        let r = s.fx.cubic.lines_through_point(&pt, 0).unwrap();
        if !r.eckardt {
            assert_eq!(r.total(), 6);
            checked += 1;
        }
    }
    assert!(checked > 20);
}
