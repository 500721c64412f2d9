use cubisect::cubic::SectionKind;
use cubisect::cubic::CubicForm;
use cubisect::fano::{discriminant_quintic, enumerate_lines, second_type_test, witness_is_double};
use exactalg::FieldTower;

#[test]
fn fermat_surface_has_27_lines_each_meeting_10() {
    let x = CubicForm::fermat(FieldTower::new(7, 6, 1).unwrap(), 3).unwrap();
    let c = enumerate_lines(&x, 1).unwrap();
    assert_eq!(c.lines.len(), 27);
    assert!(c.degrees().iter().all(|&d| d == 10));
    for l in &c.lines {
        assert!(x.contains_line(l).unwrap());
    }
    eprintln!("second type {:?}", c.second_type.iter().filter(|b| **b).count());
}

#[test]
fn threefold_census_and_line_geometry() {
    let x = CubicForm::fermat(FieldTower::new(7, 6, 1).unwrap(), 4).unwrap();
    let c = enumerate_lines(&x, 1).unwrap();
    eprintln!("{} lines, {} second type", c.lines.len(), c.second_type.iter().filter(|b| **b).count());
    for (l, st) in c.lines.iter().zip(&c.second_type) {
        if *st {
            let s = second_type_test(&x, l).unwrap();
            assert!(witness_is_double(&s), "{:?}", s.section.map(|p| p.kind));
        }
    }
    let d = discriminant_quintic(&x, &c.lines[0], 20, 0).unwrap();
    eprintln!("fermat line degree {} smooth {}", d.degree, d.samples.iter().filter(|s| s.smooth).count());
    let fx = cubisect::fixtures::skew_lines_threefold(7, 1).unwrap();
    eprintln!("fixture l0 second type {}", second_type_test(&fx.cubic, &fx.l0).unwrap().second_type);
    let d = discriminant_quintic(&fx.cubic, &fx.l0, 20, 0).unwrap();
    assert_eq!(d.degree, 5);
    eprintln!("samples {} smooth {}", d.samples.len(), d.samples.iter().filter(|s| s.smooth).count());
    assert_eq!(d.double_cover_genus, 11);
    let _ = SectionKind::TripleLine;
}
