use cubisect::curves::RationalCurve;
use cubisect::fano::enumerate_lines;
use cubisect::fixtures::{skew_lines_threefold, SkewLinesFixture};
use cubisect::oracle::{incidence, scan_secants};
use cubisect::secant::{count_secants_pair, count_secants_single, SecantReport};
use cubisect::space::ProjLine;
use exactalg::FieldTower;

fn rational_subset(r: &SecantReport<u32>) -> Vec<ProjLine<u32>> {
    let mut v: Vec<_> = r.lines.iter().filter(|s| s.line.level == 1).map(|s| s.line.clone()).collect();
    v.sort();
    v.dedup();
    v
}

fn agree_on_fixture(fx: &SkewLinesFixture<FieldTower>) -> usize {
    let g = fx.cubic.ground();
    let census = enumerate_lines(&fx.cubic, 1).unwrap().lines;
    let mut compared = 0;
    let mut rational = 0;

    let single = count_secants_single(&fx.cubic, &fx.conic, 0).unwrap();
    assert_eq!(scan_secants(g, &census, &fx.conic, None).unwrap(), rational_subset(&single));
    compared += 1;

    let mut disjoint = Vec::new();
    let mut once = Vec::new();
    for l in census.iter().filter(|l| **l != fx.l0) {
        let n = incidence(g, l, &fx.conic).unwrap().map_or(0, |i| i.length());
        match n {
            0 => disjoint.push(l.clone()),
            1 => once.push(l.clone()),
            _ => {}
        }
    }
    let mut pairs: Vec<(RationalCurve<u32>, RationalCurve<u32>)> = vec![(
        RationalCurve::from_line(g, &fx.l0).unwrap(),
        RationalCurve::from_line(g, &fx.l1).unwrap(),
    )];
    for l in disjoint.iter().take(3).chain(once.iter().take(5)) {
        pairs.push((RationalCurve::from_line(g, l).unwrap(), fx.conic.clone()));
    }
    for (a, b) in &pairs {
        let r = count_secants_pair(&fx.cubic, a, b, 0).unwrap();
        let found = scan_secants(g, &census, a, Some(b)).unwrap();
        rational += found.len();
        assert_eq!(found, rational_subset(&r));
        compared += 1;
    }
    assert!(rational > 0);
    compared
}

#[test]
fn level_one_scan_matches_pipeline_mod_7() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    assert_eq!(agree_on_fixture(&fx), 10);
}

#[test]
fn level_one_scan_matches_pipeline_mod_11() {
    let fx = skew_lines_threefold(11, 1).unwrap();
    assert!(agree_on_fixture(&fx) >= 5);
}
