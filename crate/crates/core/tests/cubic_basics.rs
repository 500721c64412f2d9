use cubisect::cubic::CubicForm;
use cubisect::space::{point, span};
use exactalg::{Field, FieldTower, Ground};

fn fermat(n: usize) -> CubicForm<FieldTower> {
    CubicForm::fermat(FieldTower::new(7, 6, 1).unwrap(), n).unwrap()
}

#[test]
fn polar_forms_match_gradient() {
    let x = fermat(4);
    let (f1, f2) = x.polar_forms().unwrap();
    let g = x.ground().clone();
    let f = g.level(1).unwrap();
    let a = [1u32, 2, 3, 0, 5];
    let b = [4u32, 0, 6, 1, 1];
    let ab: Vec<u32> = a.iter().chain(&b).copied().collect();
    assert_eq!(f1.eval(&ab, &f), x.polar1(1, &a, &b).unwrap());
    assert_eq!(f2.eval(&ab, &f), x.polar2(1, &a, &b).unwrap());
}

#[test]
fn fermat_over_f3_is_rejected() {
    assert!(CubicForm::fermat(FieldTower::new(3, 6, 1).unwrap(), 3).is_err());
}

#[test]
fn eckardt_point_of_fermat_threefold() {
    let x = fermat(4);
    let p = point(x.ground(), 1, &[1, 6, 0, 0, 0]).unwrap();
    let r = x.lines_through_point(&p, 3).unwrap();
    assert!(r.eckardt);
}

#[test]
fn six_lines_through_general_points() {
    let x = fermat(4);
    let g = x.ground().clone();
    let f = g.level(1).unwrap();
    let mut tested = 0;
    for pt in cubisect::space::projective_points(4, &f) {
        if !f.is_zero(&x.eval(1, &pt).unwrap()) {
            continue;
        }
        let p = point(&g, 1, &pt).unwrap();
        let r = x.lines_through_point(&p, 5).unwrap();
        if r.eckardt {
            continue;
        }
        assert_eq!(r.total(), 6, "{pt:?} {r:?}");
        for (l, _) in &r.lines {
            assert!(x.contains_line(l).unwrap());
        }
        tested += 1;
        if tested == 30 {
            break;
        }
    }
    assert_eq!(tested, 30);
}

#[test]
fn surface_eckardt_point_has_three_lines() {
    let x = fermat(3);
    let g = x.ground().clone();
    let p = point(&g, 1, &[1, 6, 0, 0]).unwrap();
    let r = x.lines_through_point(&p, 1).unwrap();
    assert_eq!(r.lines.len(), 3);
    let l = span(&g, 1, &[vec![1, 6, 0, 0], vec![0, 0, 1, 6]]).unwrap();
    assert!(r.lines.iter().any(|(m, _)| *m == l));
}

#[test]
fn smoothness_probe_finds_no_singular_point_on_fermat() {
    let x = fermat(3);
    let c = x.smoothness_probe(2, 100, 0).unwrap();
    assert!(c.smooth_so_far());
    assert_eq!(c.exhaustive_levels, vec![1, 2]);
}
