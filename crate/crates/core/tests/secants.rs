use cubisect::curves::{validate_curve, RationalCurve, curve_meeting_data};
use cubisect::fixtures::{skew_lines_threefold, skew_lines_threefold_rational};
use cubisect::secant::{build_system, count_secants_pair, count_secants_single};

#[test]
fn conic_has_one_secant_the_residual_line() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    eprintln!("seed {}", fx.seed);
    let v = validate_curve(&fx.cubic, &fx.conic, 0).unwrap();
    assert!(v.smooth);
    let r = count_secants_single(&fx.cubic, &fx.conic, 0).unwrap();
    eprintln!("{:?}", r.checks);
    assert_eq!(r.count_with_multiplicity, 1);
    assert_eq!(r.lines[0].line, fx.l0);
    assert!(r.well_positioned);
    assert!(r.checks.iter().all(|(_, b)| *b), "{:?}", r.checks);
}

#[test]
fn rational_conic_has_one_secant() {
    let fx = skew_lines_threefold_rational(1).unwrap();
    let r = count_secants_single(&fx.cubic, &fx.conic, 0).unwrap();
    assert_eq!(r.count_with_multiplicity, 1);
    assert_eq!(r.lines[0].line, fx.l0);
}

#[test]
fn conic_system_bidegrees() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    let s = build_system(&fx.cubic, &fx.conic, None).unwrap();
    let (a, b) = s.residual.unwrap();
    assert_eq!((a.deg, b.deg), ((2, 0), (0, 2)));
}

#[test]
fn skew_lines_have_five_transversals() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    let g = fx.cubic.ground().clone();
    let a = RationalCurve::from_line(&g, &fx.l0).unwrap();
    let b = RationalCurve::from_line(&g, &fx.l1).unwrap();
    assert_eq!(curve_meeting_data(&g, &a, &b, 0).unwrap().r(), 0);
    let r = count_secants_pair(&fx.cubic, &a, &b, 0).unwrap();
    assert_eq!(r.count_with_multiplicity, 5, "{r:?}");
    assert!(r.lines.iter().all(|l| l.verified));
}

#[test]
fn line_meeting_conic_once() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    let g = fx.cubic.ground().clone();
    let a = RationalCurve::from_line(&g, &fx.l1).unwrap();
    let m = curve_meeting_data(&g, &a, &fx.conic, 0).unwrap();
    assert_eq!(m.r(), 1);
    assert!(m.all_transversal());
    let r = count_secants_pair(&fx.cubic, &a, &fx.conic, 0).unwrap();
    eprintln!("{:?} {:?} {:?}", r.checks, r.excised, r.spurious);
    assert_eq!(r.count_with_multiplicity, 5, "{:?}", r.checks);
}

#[test]
fn fixture_has_disjoint_and_meeting_lines() {
    let fx = skew_lines_threefold(7, 1).unwrap();
    let (d, o) = cubisect::fixtures::lines_by_conic_meeting(&fx).unwrap();
    eprintln!("disjoint {} once {}", d.len(), o.len());
    let g = fx.cubic.ground().clone();
    let mut split = 0;
    for l in d.iter().take(8) {
        let a = RationalCurve::from_line(&g, l).unwrap();
        let r = count_secants_pair(&fx.cubic, &a, &fx.conic, 0).unwrap();
        assert_eq!(r.count_with_multiplicity + r.unsplit_degree as u64, 10);
        if r.well_positioned {
            split += 1;
        }
    }
    assert!(split > 0);
    for l in &o {
        let row = cubisect::fano::correspondence_row(&fx.cubic, &fx.conic, l, 0).unwrap();
        assert!(row.contains_l);
        assert_eq!(row.six_lines.total(), 6);
        assert_eq!(row.report.check("excess per meeting point"), Some(true), "{:?} {:?} {:?} {:?}", row.meeting_point, row.report.excised, row.report.spurious, row.report.lines.iter().map(|s| (s.multiplicity, s.kind, s.params.clone())).collect::<Vec<_>>());
        assert_eq!(row.report.count_with_multiplicity + row.report.unsplit_degree as u64, 5);
        assert!(row.report.lines.iter().all(|s| s.verified));
    }
}
