//! End-to-end acceptance run: one line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use chow::symbol::{Idx, Lin, Name, Top};
use chow::{normalize, normalize_with, Expr, Relation};
use cubisect::cubic::{Component, CubicForm};
use cubisect::curves::{curve_meeting_data, RationalCurve};
use cubisect::fano::{correspondence_row, discriminant_quintic, enumerate_lines};
use cubisect::fixtures::{skew_lines_threefold, skew_lines_threefold_rational, SkewLinesFixture};
use cubisect::oracle::{incidence, scan_secants};
use cubisect::secant::{count_secants_pair, count_secants_single, SecantReport};
use cubisect::space::{field, lines_meet, point, projective_points, El, ProjLine};
use exactalg::{Field, FieldTower, Ground, Rationals};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fixture(p: u32) -> &'static SkewLinesFixture<FieldTower> {
    static F7: OnceLock<SkewLinesFixture<FieldTower>> = OnceLock::new();
    static F11: OnceLock<SkewLinesFixture<FieldTower>> = OnceLock::new();
    let cell = if p == 7 { &F7 } else { &F11 };
    cell.get_or_init(|| skew_lines_threefold(p, 1).expect("fixture"))
}

fn census(p: u32) -> &'static Vec<ProjLine<u32>> {
    static C7: OnceLock<Vec<ProjLine<u32>>> = OnceLock::new();
    static C11: OnceLock<Vec<ProjLine<u32>>> = OnceLock::new();
    let cell = if p == 7 { &C7 } else { &C11 };
    cell.get_or_init(|| enumerate_lines(&fixture(p).cubic, 1).expect("census").lines)
}

/// Secants audited by independent substitution: (sound, total).
static AUDIT: Mutex<(usize, usize)> = Mutex::new((0, 0));

fn audit<G: Ground>(x: &CubicForm<G>, r: &SecantReport<El<G>>, a: &RationalCurve<El<G>>, b: &RationalCurve<El<G>>) {
    let g = x.ground();
    let mut sound = 0;
    for s in &r.lines {
        let mut ok = s.verified && x.contains_line(&s.line).unwrap_or(false);
        if let Some((lvl, z, w)) = &s.params {
            for (c, t) in [(a, z), (b, w)] {
                ok &= c
                    .eval(g, *lvl, t)
                    .and_then(|v| point(g, *lvl, &v))
                    .and_then(|p| s.line.contains_point(g, &p))
                    .unwrap_or(false);
            }
        }
        sound += ok as usize;
    }
    let mut t = AUDIT.lock().unwrap();
    t.0 += sound;
    t.1 += r.lines.len();
}

fn conic_secant_count() -> Check {
    let fx = fixture(7);
    let section = fx.cubic.plane_residual(&fx.plane, None, 0).map_err(e2s)?;
    let residual: Vec<_> = section
        .components
        .iter()
        .filter_map(|(c, _)| if let Component::Line(l) = c { Some(l.clone()) } else { None })
        .collect();
    ensure(residual.len() == 1, format!("plane section {}", section.kind.label()))?;
    let r = count_secants_single(&fx.cubic, &fx.conic, 0).map_err(e2s)?;
    audit(&fx.cubic, &r, &fx.conic, &fx.conic);
    ensure(r.count_with_multiplicity == 1 && r.lines[0].line == residual[0], "F_7 secant is not the residual line")?;
    ensure(r.well_positioned, "F_7 report not well positioned")?;

    let q = skew_lines_threefold_rational(1).map_err(e2s)?;
    let rq = count_secants_single(&q.cubic, &q.conic, 0).map_err(e2s)?;
    audit(&q.cubic, &rq, &q.conic, &q.conic);
    let residual_q = q.cubic.plane_residual(&q.plane, None, 0).map_err(e2s)?;
    let lq = residual_q.components.iter().find_map(|(c, _)| if let Component::Line(l) = c { Some(l.clone()) } else { None });
    ensure(rq.count_with_multiplicity == 1 && Some(&rq.lines[0].line) == lq.as_ref(), "Q secant is not the residual line")?;
    Ok("F_7 and Q: one secant, equal to the residual line".into())
}

fn skew_line_transversals() -> Check {
    let fx = fixture(7);
    let g = fx.cubic.ground();
    let a = RationalCurve::from_line(g, &fx.l0).map_err(e2s)?;
    let b = RationalCurve::from_line(g, &fx.l1).map_err(e2s)?;
    let r = count_secants_pair(&fx.cubic, &a, &b, 0).map_err(e2s)?;
    audit(&fx.cubic, &r, &a, &b);
    ensure(r.count_with_multiplicity == 5 && r.distinct_count == 5, format!("{} transversals", r.count_with_multiplicity))?;
    for s in &r.lines {
        let ok = fx.cubic.contains_line(&s.line).map_err(e2s)?
            && lines_meet(g, &s.line, &fx.l0).map_err(e2s)?
            && lines_meet(g, &s.line, &fx.l1).map_err(e2s)?;
        ensure(ok, "a transversal fails substitution")?;
    }
    let levels: Vec<u32> = r.lines.iter().map(|s| s.line.level).collect();
    Ok(format!("5 transversals on X, levels {levels:?}"))
}

fn line_conic_pairs() -> Check {
    let fx = fixture(7);
    let g = fx.cubic.ground();
    let mut split = 0;
    let mut tried = 0;
    for l in census(7).iter().filter(|l| incidence(g, l, &fx.conic).ok().flatten().is_some_and(|i| i.length() == 0)).take(8) {
        let a = RationalCurve::from_line(g, l).map_err(e2s)?;
        let r = count_secants_pair(&fx.cubic, &a, &fx.conic, 0).map_err(e2s)?;
        audit(&fx.cubic, &r, &a, &fx.conic);
        ensure(r.count_with_multiplicity + r.unsplit_degree as u64 == 10, "disjoint pair total differs from 10")?;
        tried += 1;
        if r.unsplit_degree == 0 {
            ensure(r.count_with_multiplicity == 10, "split disjoint pair differs from 10")?;
            split += 1;
        }
    }
    ensure(split > 0, "no disjoint pair split within the budget")?;
    let a = RationalCurve::from_line(g, &fx.l1).map_err(e2s)?;
    let m = curve_meeting_data(g, &a, &fx.conic, 0).map_err(e2s)?;
    ensure(m.r() == 1 && m.all_transversal(), "L1 does not meet the conic transversally once")?;
    let r = count_secants_pair(&fx.cubic, &a, &fx.conic, 0).map_err(e2s)?;
    audit(&fx.cubic, &r, &a, &fx.conic);
    ensure(r.count_with_multiplicity == 5, format!("meeting pair gives {}", r.count_with_multiplicity))?;
    Ok(format!("disjoint: 10 ({split} of {tried} split within the budget, all totals 10); meeting once: 5"))
}

fn twenty_seven_lines() -> Check {
    let x = CubicForm::fermat(FieldTower::new(7, 2, 0).map_err(e2s)?, 3).map_err(e2s)?;
    let c = enumerate_lines(&x, 1).map_err(e2s)?;
    ensure(c.lines.len() == 27, format!("{} lines", c.lines.len()))?;
    ensure(c.degrees().iter().all(|d| *d == 10), "a line does not meet exactly 10 others")?;
    Ok("27 lines, each meeting 10".into())
}

fn six_lines_through_a_point() -> Check {
    let fx = fixture(7);
    let g = fx.cubic.ground();
    let f = field(g, 1).map_err(e2s)?;
    let mut pts: Vec<Vec<u32>> = projective_points(4, &f).filter(|x| fx.cubic.eval(1, x).is_ok_and(|v| v == 0)).collect();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(5));
    let mut done = 0;
    for x in pts {
        if done == 50 {
            break;
        }
        let p = point(g, 1, &x).map_err(e2s)?;
        if fx.cubic.is_singular_point(&p).map_err(e2s)? {
            continue;
        }
        let r = fx.cubic.lines_through_point(&p, 0).map_err(e2s)?;
        if r.eckardt {
            continue;
        }
        ensure(r.total() == 6, format!("{:?} has total {}", x, r.total()))?;
        done += 1;
    }
    ensure(done == 50, format!("only {done} usable points"))?;
    let fermat = CubicForm::fermat(FieldTower::new(7, 6, 0).map_err(e2s)?, 4).map_err(e2s)?;
    let ff = field(fermat.ground(), 1).map_err(e2s)?;
    let e = point(fermat.ground(), 1, &[1, ff.neg(&1), 0, 0, 0]).map_err(e2s)?;
    ensure(fermat.lines_through_point(&e, 0).map_err(e2s)?.eckardt, "Fermat point not flagged")?;
    Ok("50 points with total 6; Fermat point flagged Eckardt".into())
}

fn symbolic_rederivation() -> Check {
    for e in 2..=12 {
        for g in 0..=10 {
            let d = chow::derive_secant_count(e, g).map_err(e2s)?;
            ensure(d.matched && d.symbolic_match && !d.trace.is_empty(), format!("N({e},{g})"))?;
            ensure(d.value == chow::derive::secant_count_formula(e, g), format!("N({e},{g}) value"))?;
        }
    }
    for e1 in 1..=8 {
        for e2 in 1..=8 {
            for r in 0..=4 {
                let d = chow::derive_pair_count(e1, e2, r).map_err(e2s)?;
                ensure(d.matched && d.value == chow::derive::pair_count_formula(e1, e2, r), format!("pair({e1},{e2},{r})"))?;
            }
        }
    }
    Ok("121 single and 320 pair derivations match".into())
}

fn relation_degrees() -> Check {
    let mut rows = 0;
    for rel in [Relation::SingleCurve, Relation::Pair, Relation::LineMeeting] {
        let table = chow::relation_degree_check(rel, &rel.default_ranges());
        ensure(!table.is_empty() && table.iter().all(|r| r.pass), format!("relation {} fails", rel.label()))?;
        rows += table.len();
    }
    Ok(format!("{rows} rows pass"))
}

fn discriminant() -> Check {
    let fx = fixture(7);
    let d = discriminant_quintic(&fx.cubic, &fx.l0, 20, 0).map_err(e2s)?;
    ensure(d.degree == 5, format!("degree {}", d.degree))?;
    ensure(d.samples.len() == 20 && d.samples.iter().all(|s| s.smooth), "fewer than 20 smooth samples")?;
    ensure(d.quintic_genus == 6 && d.double_cover_genus == 11, "genus bookkeeping")?;
    Ok("degree 5, smooth at 20 samples, double cover genus 2*6-1 = 11".into())
}

fn row_sums() -> Check {
    let fx = fixture(7);
    let g = fx.cubic.ground();
    let once: Vec<_> = census(7).iter().filter(|l| incidence(g, l, &fx.conic).ok().flatten().is_some_and(|i| i.length() == 1)).take(10).collect();
    ensure(once.len() == 10, "fewer than 10 lines meet the conic once")?;
    for l in once {
        let row = correspondence_row(&fx.cubic, &fx.conic, l, 0).map_err(e2s)?;
        let a = RationalCurve::from_line(g, l).map_err(e2s)?;
        audit(&fx.cubic, &row.report, &a, &fx.conic);
        let total = row.report.count_with_multiplicity + row.report.unsplit_degree as u64;
        ensure(total as i64 == row.expected_total && total == 5, format!("row total {total}"))?;
    }
    Ok("10 rows, each total 5".into())
}

fn level_one(r: &SecantReport<u32>) -> Vec<ProjLine<u32>> {
    let mut v: Vec<_> = r.lines.iter().filter(|s| s.line.level == 1).map(|s| s.line.clone()).collect();
    v.sort();
    v.dedup();
    v
}

fn oracle_equivalence() -> Check {
    let mut runs = 0;
    let mut lines = 0;
    for p in [7, 11] {
        let fx = fixture(p);
        let g = fx.cubic.ground();
        let all = census(p);
        let r = count_secants_single(&fx.cubic, &fx.conic, 0).map_err(e2s)?;
        audit(&fx.cubic, &r, &fx.conic, &fx.conic);
        let scan = scan_secants(g, all, &fx.conic, None).map_err(e2s)?;
        ensure(scan == level_one(&r), format!("single conic over F_{p}"))?;
        runs += 1;
        lines += scan.len();
        let mut pairs = vec![(RationalCurve::from_line(g, &fx.l0).map_err(e2s)?, RationalCurve::from_line(g, &fx.l1).map_err(e2s)?)];
        let by_length = |n: usize| all.iter().filter(move |l| **l != fx.l0 && incidence(g, l, &fx.conic).ok().flatten().is_some_and(|i| i.length() == n));
        for l in by_length(0).take(3).chain(by_length(1).take(5)) {
            pairs.push((RationalCurve::from_line(g, l).map_err(e2s)?, fx.conic.clone()));
        }
        for (a, b) in &pairs {
            let r = count_secants_pair(&fx.cubic, a, b, 0).map_err(e2s)?;
            audit(&fx.cubic, &r, a, b);
            let scan = scan_secants(g, all, a, Some(b)).map_err(e2s)?;
            ensure(scan == level_one(&r), format!("pair over F_{p}"))?;
            runs += 1;
            lines += scan.len();
        }
    }
    Ok(format!("{runs} computations agree, {lines} rational lines compared"))
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32, pair: bool) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        let common = [
            Expr::lin(Lin::E(Idx::One(1))),
            Expr::lin(Lin::E(Idx::All)),
            Expr::Sym(chow::symbol::Symbol::XiS),
            Expr::top(Top::Pt),
            Expr::param("g"),
            Expr::num(rng.gen_range(0..5)),
        ];
        let specific = if pair {
            vec![Expr::lin(Lin::A1xC2), Expr::lin(Lin::C1xA2), Expr::lin(Lin::F(Idx::All)), Expr::param("r")]
        } else {
            vec![Expr::d("a"), Expr::d("K_C"), Expr::lin(Lin::Delta0), Expr::top(Top::Delta(Name::new("a"))), Expr::param("e")]
        };
        let k = rng.gen_range(0..common.len() + specific.len());
        return if k < common.len() { common[k].clone() } else { specific[k - common.len()].clone() };
    }
    let a = random_expr(rng, depth - 1, pair);
    match rng.gen_range(0..4) {
        0 => a.add(random_expr(rng, depth - 1, pair)),
        1 => a.sub(random_expr(rng, depth - 1, pair)),
        2 => a.mul(random_expr(rng, depth - 1, pair)),
        _ => a.neg(),
    }
}

fn field_axioms<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> bool {
    (0..1000).all(|_| {
        let (a, b, c) = (f.random_elem(rng), f.random_elem(rng), f.random_elem(rng));
        f.mul(&f.mul(&a, &b), &c) == f.mul(&a, &f.mul(&b, &c))
            && f.add(&f.add(&a, &b), &c) == f.add(&a, &f.add(&b, &c))
            && f.mul(&a, &f.add(&b, &c)) == f.add(&f.mul(&a, &b), &f.mul(&a, &c))
            && f.mul(&a, &b) == f.mul(&b, &a)
            && f.is_zero(&f.add(&a, &f.neg(&a)))
            && (f.is_zero(&a) || f.is_one(&f.mul(&a, &f.inv(&a).unwrap())))
    })
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..1000 {
        let e = random_expr(&mut rng, 4, i % 2 == 1);
        let reference = normalize(&e).map_err(e2s)?.class;
        let shuffled = normalize_with(&e, None, &mut |n| rng.gen_range(0..n)).map_err(e2s)?.class;
        ensure(reference == shuffled, format!("confluence fails on {e}"))?;
    }
    for (p, k) in [(7u32, 6u32), (11, 4)] {
        let t = FieldTower::new(p, k, 2024).map_err(e2s)?;
        for lvl in 1..=k {
            ensure(field_axioms(&t.level(lvl).map_err(e2s)?, &mut rng), format!("axioms fail on F_{p}^{lvl}"))?;
        }
    }
    ensure(field_axioms(&Rationals, &mut rng), "axioms fail on Q")?;

    let (sound, total) = *AUDIT.lock().unwrap();
    ensure(total > 0 && sound == total, format!("{sound} of {total} secants sound"))?;

    let runs = [
        vec!["secants", "--cubic", &data("cubic7.json"), "--curve", &data("conic7.json")],
        vec!["pair-secants", "--cubic", &data("cubic7.json"), "--curve", &data("l1_7.json"), "--curve2", &data("conic7.json")],
        vec!["row-sum", "--cubic", &data("cubic7.json"), "--curve", &data("conic7.json"), "--sample", "2", "--seed", "9"],
    ]
    .map(|args| args.into_iter().map(String::from).collect::<Vec<_>>());
    for args in &runs {
        let argv = || std::iter::once("cubisect".to_string()).chain(args.iter().cloned());
        let one = cubisect_cli::run(argv()).0;
        let two = cubisect_cli::run(argv()).0;
        ensure(one.code == 0, format!("`{}` exited with {}", args[0], one.code))?;
        ensure(one.render(false) == two.render(false), format!("`{}` is not deterministic", args[0]))?;
    }
    Ok(format!("1000 expressions confluent; axioms on 10 tower levels and Q; {sound}/{total} secants sound; 3 reports byte-identical"))
}

type Criterion = (&'static str, u64, fn() -> Check);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("conic secant count", 5, conic_secant_count),
        ("skew-line transversals", 5, skew_line_transversals),
        ("line-conic pairs", 10, line_conic_pairs),
        ("27 lines", 60, twenty_seven_lines),
        ("six lines through a point", 60, six_lines_through_a_point),
        ("symbolic re-derivation", 5, symbolic_rederivation),
        ("relation degree consistency", 5, relation_degrees),
        ("discriminant quintic", 10, discriminant),
        ("correspondence row sums", 60, row_sums),
        ("oracle equivalence", 600, oracle_equivalence),
        ("property suites", 600, property_suites),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= Duration::from_secs(limit) => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s budget")),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!("{} {:>2}. {name} ({:.2} s): {detail}", if ok { "PASS" } else { "FAIL" }, i + 1, took.as_secs_f64());
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
