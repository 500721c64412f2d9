//! One function per subcommand. Geometry commands are generic over the
//! ground, which is read from the cubic document (`p = 0` for the rationals).

use std::path::Path;

use base64::Engine;
use exactalg::{FieldTower, RationalGround};
use serde_json::{json, Value};

use cubisect::cubic::CubicForm;
use cubisect::curves::{validate_curve, RationalCurve};
use cubisect::fano::{correspondence_row, discriminant_quintic, enumerate_lines, second_type_test, witness_is_double};
use cubisect::oracle::incidence;
use cubisect::secant::{count_secants_pair, count_secants_single, SecantReport};
use cubisect::space::{El, ProjLine};

use crate::encode::{Enc, GroundJson};
use crate::input::{parse_line, parse_point, parse_ranges, read_json, CubicDoc, CurveDoc};
use crate::{Claim, CliError, Command, Outcome, RunConfig};

fn load_cubic<G: GroundJson>(doc: &CubicDoc, g: G) -> Result<CubicForm<G>, CliError> {
    Ok(CubicForm::from_integer_terms(g, doc.n, &doc.terms())?)
}

/// Builds the cubic over its ground and runs `$body` with it bound to `$x`.
macro_rules! with_cubic {
    ($doc:expr, $cfg:expr, |$x:ident| $body:expr) => {{
        let doc: &CubicDoc = $doc;
        if doc.p == 0 {
            let $x = load_cubic(doc, RationalGround)?;
            $body
        } else {
            let $x = load_cubic(doc, FieldTower::new(doc.p, $cfg.budget, $cfg.seed)?)?;
            $body
        }
    }};
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cmd {
        Command::ValidateCubic { cubic, max_level, samples, reduce_mod } => validate_cubic(cubic, *max_level, *samples, *reduce_mod, cfg),
        Command::ValidateCurve { cubic, curve } => {
            let curve: CurveDoc = read_json(curve)?;
            with_cubic!(&read_json(cubic)?, cfg, |x| validate_curve_cmd(&x, &curve, cfg))
        }
        Command::Secants { cubic, curve } => {
            let curve: CurveDoc = read_json(curve)?;
            with_cubic!(&read_json(cubic)?, cfg, |x| secants(&x, &curve, cfg))
        }
        Command::PairSecants { cubic, curve, curve2 } => {
            let a: CurveDoc = read_json(curve)?;
            let b: CurveDoc = read_json(curve2)?;
            with_cubic!(&read_json(cubic)?, cfg, |x| pair_secants(&x, &a, &b, cfg))
        }
        Command::ChowEval { expression, bind, bindings, expect } => chow_eval(expression, bind.as_deref(), bindings.as_deref(), *expect),
        Command::DeriveCount { e, g, pair, grid } => derive_count(*e, *g, pair.as_deref(), *grid),
        Command::RelationCheck { relation, range } => relation_check(relation, range.as_deref()),
        Command::EnumerateLines { cubic, level } => {
            let doc: CubicDoc = read_json(cubic)?;
            if doc.p == 0 {
                return Err(CliError::Usage("line censuses need a finite field".into()));
            }
            let x = load_cubic(&doc, FieldTower::new(doc.p, cfg.budget, cfg.seed)?)?;
            census(&x, *level)
        }
        Command::LinesThroughPoint { cubic, point } => with_cubic!(&read_json(cubic)?, cfg, |x| lines_through(&x, point, cfg)),
        Command::SecondType { cubic, line } => with_cubic!(&read_json(cubic)?, cfg, |x| second_type(&x, line)),
        Command::Discriminant { cubic, line, samples } => with_cubic!(&read_json(cubic)?, cfg, |x| discriminant(&x, line, *samples, cfg)),
        Command::RowSum { cubic, curve, line, sample } => {
            let doc: CubicDoc = read_json(cubic)?;
            let curve: CurveDoc = read_json(curve)?;
            match (doc.p, line) {
                (0, None) => Err(CliError::Usage("sampling lines from a census needs a finite field; pass --line".into())),
                (0, Some(l)) => {
                    let x = load_cubic(&doc, RationalGround)?;
                    let lines = vec![parse_line(x.ground(), l, x.n() + 1)?];
                    row_sum(&x, &curve, &lines, cfg)
                }
                (p, l) => {
                    let x = load_cubic(&doc, FieldTower::new(p, cfg.budget, cfg.seed)?)?;
                    let c = curve.curve(x.ground())?;
                    let lines = match l {
                        Some(l) => vec![parse_line(x.ground(), l, x.n() + 1)?],
                        None => lines_meeting_once(&x, &c, *sample)?,
                    };
                    row_sum(&x, &curve, &lines, cfg)
                }
            }
        }
    }
}

fn validate_cubic(path: &Path, max_level: u32, samples: u64, reduce_mod: u32, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let doc: CubicDoc = read_json(path)?;
    let p = if doc.p == 0 { reduce_mod } else { doc.p };
    let x = load_cubic(&doc, FieldTower::new(p, cfg.budget, cfg.seed)?)?;
    if doc.p == 0 {
        // a cubic over Q is also a cubic form
        load_cubic(&doc, RationalGround)?;
    }
    let cert = x.smoothness_probe(max_level.min(cfg.budget), samples, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let singular = cert.singular_point.as_ref().map(|pt| enc.point(pt));
    let result = json!({
        "n": x.n(),
        "certified_mod": p,
        "exhaustive_levels": cert.exhaustive_levels,
        "sampled_levels": cert.sampled_levels,
        "singular_point": singular,
        "char3_warning": cert.char3_warning,
    });
    Ok(Outcome { result, claims: vec![Claim::new("no singular point found", cert.smooth_so_far(), true)], tower: enc.tower() })
}

fn validate_curve_cmd<G: GroundJson>(x: &CubicForm<G>, curve: &CurveDoc, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = curve.curve(x.ground())?;
    let v = validate_curve(x, &c, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let nodes: Vec<Value> = v
        .nodes
        .iter()
        .map(|n| json!({ "point": enc.point(&n.point), "s": enc.param(n.level, &n.s), "t": enc.param(n.level, &n.t), "cusp": n.cusp }))
        .collect();
    let result = json!({
        "degree": v.degree,
        "on_x": v.on_x,
        "base_point_free": v.base_point_free,
        "birational": v.birational,
        "nodes": nodes,
        "smooth": v.smooth,
        "transversality_unchecked": v.transversality_unchecked,
    });
    let claims = vec![Claim::new("curve lies on X", v.on_x, true), Claim::new("smooth and birational", v.smooth, true)];
    Ok(Outcome { result, claims, tower: enc.tower() })
}

fn report_claims<E>(r: &SecantReport<E>, formula: i64) -> Vec<Claim> {
    let mut claims = vec![
        Claim::new("secant count with multiplicity", r.count_with_multiplicity, formula),
        Claim::new("degree left unsplit within the budget", r.unsplit_degree, 0),
        Claim::new("every secant verified by substitution", r.lines.iter().all(|l| l.verified), true),
    ];
    claims.extend(r.checks.iter().map(|(k, v)| Claim::new(k.clone(), *v, true)));
    claims
}

fn secants<G: GroundJson>(x: &CubicForm<G>, curve: &CurveDoc, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = curve.curve(x.ground())?;
    let r = count_secants_single(x, &c, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let formula = chow::derive::secant_count_formula(c.e as i64, 0);
    let formula = i64::try_from(formula).map_err(|_| CliError::Input("curve degree too large".into()))?;
    let claims = report_claims(&r, formula);
    Ok(Outcome { result: enc.report(&r), claims, tower: enc.tower() })
}

fn pair_secants<G: GroundJson>(x: &CubicForm<G>, a: &CurveDoc, b: &CurveDoc, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (ca, cb) = (a.curve(x.ground())?, b.curve(x.ground())?);
    let r = count_secants_pair(x, &ca, &cb, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let claims = report_claims(&r, r.expected);
    Ok(Outcome { result: enc.report(&r), claims, tower: enc.tower() })
}

fn read_bindings(path: &Path) -> Result<String, CliError> {
    let map: serde_json::Map<String, Value> = read_json(path)?;
    map.iter()
        .map(|(k, v)| match v.as_i64() {
            Some(n) => Ok(format!("{k}={n}")),
            None => Err(CliError::Input(format!("binding `{k}` is not an integer"))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.join(","))
}

fn chow_eval(expression: &str, bind: Option<&str>, bindings: Option<&Path>, expect: Option<i64>) -> Result<Outcome, CliError> {
    let mut text = bind.unwrap_or("").to_string();
    if let Some(p) = bindings {
        let more = read_bindings(p)?;
        if !more.is_empty() {
            text = if text.is_empty() { more } else { format!("{text},{more}") };
        }
    }
    let b = chow::Bindings::parse(&text)?;
    let expr = chow::parse(expression)?;
    let n = chow::normalize(&expr)?;
    let value = chow::evaluate(&n.class, &b)?;
    let result = json!({
        "expression": expression,
        "model": format!("{:?}", n.model).to_lowercase(),
        "expanded": n.expanded,
        "normal_form": n.class.to_string(),
        "value": value.to_string(),
        "trace": n.trace,
    });
    let claims = expect.map(|v| vec![Claim::new("value", value.to_string(), v.to_string())]).unwrap_or_default();
    Ok(Outcome { result, claims, tower: Value::Null })
}

fn derivation_json(d: &chow::Derivation) -> Value {
    json!({
        "c1": d.c1,
        "c2": d.c2,
        "twist": d.twist,
        "expression": d.expression,
        "expanded": d.expanded,
        "normal_form": d.normal_form,
        "symbolic_degree": d.symbolic_degree,
        "value": d.value.to_string(),
        "formula": d.formula.to_string(),
        "trace": d.trace,
    })
}

fn derive_count(e: Option<i64>, g: Option<i64>, pair: Option<&str>, grid: bool) -> Result<Outcome, CliError> {
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    if grid {
        for e in 2..=12 {
            for g in 0..=10 {
                singles.push((e, g));
            }
        }
        for e1 in 1..=8 {
            for e2 in 1..=8 {
                for r in 0..=4 {
                    pairs.push((e1, e2, r));
                }
            }
        }
    }
    if let Some(e) = e {
        singles.push((e, g.unwrap_or(0)));
    }
    if let Some(p) = pair {
        let v: Vec<i64> = p.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().map_err(|_| CliError::Usage(format!("bad --pair `{p}`")))?;
        let [e1, e2, r] = v[..] else { return Err(CliError::Usage("--pair takes e1,e2,r".into())) };
        pairs.push((e1, e2, r));
    }
    if singles.is_empty() && pairs.is_empty() {
        return Err(CliError::Usage("pass --e/--g, --pair or --grid".into()));
    }
    let mut claims = Vec::new();
    let mut single_out = Vec::new();
    for (e, g) in singles {
        let d = chow::derive_secant_count(e, g)?;
        claims.push(Claim::new(format!("N({e},{g})"), d.value.to_string(), d.formula.to_string()));
        claims.push(Claim::new(format!("N({e},{g}) symbolic degree"), d.symbolic_match, true));
        let mut v = derivation_json(&d);
        v["e"] = json!(e);
        v["g"] = json!(g);
        single_out.push(v);
    }
    let mut pair_out = Vec::new();
    for (e1, e2, r) in pairs {
        let d = chow::derive_pair_count(e1, e2, r)?;
        claims.push(Claim::new(format!("pair({e1},{e2},{r})"), d.value.to_string(), d.formula.to_string()));
        let mut v = derivation_json(&d);
        v["e1"] = json!(e1);
        v["e2"] = json!(e2);
        v["r"] = json!(r);
        pair_out.push(v);
    }
    Ok(Outcome { result: json!({ "single": single_out, "pair": pair_out }), claims, tower: Value::Null })
}

fn relation_check(label: &str, range: Option<&str>) -> Result<Outcome, CliError> {
    let rel = chow::Relation::from_label(label).ok_or_else(|| CliError::Usage(format!("unknown relation `{label}`")))?;
    let ranges = match range {
        None => rel.default_ranges(),
        Some(text) => {
            let given = parse_ranges(text)?;
            rel.params()
                .iter()
                .map(|p| {
                    given
                        .iter()
                        .find(|(k, _)| k == p)
                        .map(|(_, r)| r.clone())
                        .ok_or_else(|| CliError::Usage(format!("missing range for `{p}`")))
                })
                .collect::<Result<_, _>>()?
        }
    };
    let rows = chow::relation_degree_check(rel, &ranges);
    let passing = rows.iter().filter(|r| r.pass).count();
    let table: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "params": r.params, "lhs": r.lhs.to_string(), "rhs": r.rhs.to_string(), "secant_count": r.secant_count.to_string(), "pass": r.pass }))
        .collect();
    let result = json!({ "relation": rel.label(), "parameters": rel.params(), "rows": table });
    Ok(Outcome { result, claims: vec![Claim::new("rows passing", passing, rows.len())], tower: Value::Null })
}

fn census(x: &CubicForm<FieldTower>, level: u32) -> Result<Outcome, CliError> {
    let c = enumerate_lines(x, level)?;
    let enc = Enc::new(x.ground());
    let lines: Vec<Value> = c.lines.iter().map(|l| enc.subspace(l)).collect();
    let degrees = c.degrees();
    let result = json!({
        "level": c.level,
        "lines": lines,
        "adjacency": base64::engine::general_purpose::STANDARD.encode(c.adjacency_bytes()),
        "degrees": degrees,
        "second_type": c.second_type,
    });
    let mut claims = Vec::new();
    if x.n() == 3 && c.lines.len() == 27 {
        claims.push(Claim::new("lines meeting exactly 10 others", degrees.iter().filter(|d| **d == 10).count(), 27));
    }
    Ok(Outcome { result, claims, tower: enc.tower() })
}

fn lines_through<G: GroundJson>(x: &CubicForm<G>, point: &str, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = parse_point(x.ground(), point, x.n() + 1)?;
    let r = x.lines_through_point(&p, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let mut claims = Vec::new();
    if x.n() == 4 && !r.eckardt {
        claims.push(Claim::new("lines through the point with multiplicity", r.total(), 6));
    }
    Ok(Outcome { result: enc.lines_through(&r), claims, tower: enc.tower() })
}

fn second_type<G: GroundJson>(x: &CubicForm<G>, line: &str) -> Result<Outcome, CliError> {
    let l = parse_line(x.ground(), line, x.n() + 1)?;
    let s = second_type_test(x, &l)?;
    let enc = Enc::new(x.ground());
    let result = json!({
        "line": enc.subspace(&l),
        "second_type": s.second_type,
        "witness": s.witness.as_ref().map(|p| enc.subspace(p)),
        "section": s.section.as_ref().map(|sec| enc.section(sec, s.witness.as_ref().map_or(1, |p| p.level))),
    });
    let mut claims = Vec::new();
    if s.second_type {
        claims.push(Claim::new("witness plane contains the line doubly", witness_is_double(&s), true));
    }
    Ok(Outcome { result, claims, tower: enc.tower() })
}

fn discriminant<G: GroundJson>(x: &CubicForm<G>, line: &str, samples: usize, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let l = parse_line(x.ground(), line, x.n() + 1)?;
    let d = discriminant_quintic(x, &l, samples, cfg.seed)?;
    let enc = Enc::new(x.ground());
    let form = x.ground().level(d.level).map(|f| d.form.format(&f, &["u0", "u1", "u2"])).unwrap_or_default();
    let pts: Vec<Value> = d
        .samples
        .iter()
        .map(|s| json!({ "point": enc.point(&s.point), "smooth": s.smooth, "fiber_degenerate": s.fiber_degenerate }))
        .collect();
    let smooth = d.samples.iter().filter(|s| s.smooth).count();
    let degenerate = d.samples.iter().filter(|s| s.fiber_degenerate).count();
    let result = json!({
        "line": enc.subspace(&l),
        "form": form,
        "level": d.level,
        "degree": d.degree,
        "samples": pts,
        "off_curve_smooth_fibers": d.off_curve_smooth_fibers,
        "quintic_genus": d.quintic_genus,
        "double_cover_genus": d.double_cover_genus,
    });
    let claims = vec![
        Claim::new("degree", d.degree, 5),
        Claim::new("sampled points", d.samples.len(), samples),
        Claim::new("smooth sampled points", smooth, samples),
        Claim::new("sampled fibers degenerate", degenerate, samples),
        Claim::new("genus of a smooth plane quintic", d.quintic_genus, 6),
        Claim::new("genus of the double cover", d.double_cover_genus, 2 * 6 - 1),
    ];
    Ok(Outcome { result, claims, tower: enc.tower() })
}

fn lines_meeting_once(x: &CubicForm<FieldTower>, c: &RationalCurve<u32>, sample: usize) -> Result<Vec<ProjLine<u32>>, CliError> {
    let census = enumerate_lines(x, 1)?;
    let mut out = Vec::new();
    for l in census.lines {
        if out.len() == sample {
            break;
        }
        if incidence(x.ground(), &l, c)?.is_some_and(|i| i.length() == 1) {
            out.push(l);
        }
    }
    Ok(out)
}

fn row_sum<G: GroundJson>(x: &CubicForm<G>, curve: &CurveDoc, lines: &[ProjLine<El<G>>], cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = curve.curve(x.ground())?;
    let enc = Enc::new(x.ground());
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let row = correspondence_row(x, &c, l, cfg.seed)?;
        let total = row.report.count_with_multiplicity + row.report.unsplit_degree as u64;
        claims.push(Claim::new(format!("row {i} total with multiplicity"), total, row.expected_total));
        claims.push(Claim::new(format!("row {i} lines through the meeting point"), row.six_lines.total(), 6));
        claims.push(Claim::new(format!("row {i} line found through the meeting point"), row.contains_l, true));
        rows.push(json!({
            "line": enc.subspace(l),
            "meeting_point": enc.point(&row.meeting_point),
            "report": enc.report(&row.report),
            "expected_total": row.expected_total,
            "lines_through_meeting_point": enc.lines_through(&row.six_lines),
            "clause_iii_unchecked": row.clause_iii_unchecked,
        }));
    }
    Ok(Outcome { result: json!({ "rows": rows }), claims, tower: enc.tower() })
}
