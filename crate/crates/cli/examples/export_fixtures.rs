//! Writes the skew-lines fixtures as JSON inputs for the command line tool.
//!
//! cargo run --example export_fixtures -- <dir>

use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use cubisect::curves::RationalCurve;
use cubisect::fixtures::{skew_lines_threefold, skew_lines_threefold_rational};
use cubisect::space::ProjLine;
use cubisect_cli::input::{CubicDoc, CurveDoc, Monomial};

fn write<T: Serialize>(dir: &Path, name: &str, v: &T) {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap() + "\n").unwrap();
    println!("wrote {}", path.display());
}

fn cubic_doc(p: u32, terms: &[(Vec<u32>, BigInt)]) -> CubicDoc {
    let monomials = terms.iter().map(|(e, c)| Monomial { exps: e.clone(), coeff: c.clone() }).collect();
    CubicDoc { p, n: 4, monomials }
}

fn line_doc(l: &ProjLine<u32>) -> CurveDoc {
    let g = exactalg::FieldTower::new(2, 1, 0).unwrap();
    CurveDoc::from_curve(&RationalCurve::from_line(&g, l).unwrap())
}

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "data".into());
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).unwrap();

    for p in [7u32, 11] {
        let fx = skew_lines_threefold(p, 1).unwrap();
        write(dir, &format!("cubic{p}.json"), &cubic_doc(p, &fx.terms));
        write(dir, &format!("conic{p}.json"), &CurveDoc::from_curve(&fx.conic));
        write(dir, &format!("l0_{p}.json"), &line_doc(&fx.l0));
        write(dir, &format!("l1_{p}.json"), &line_doc(&fx.l1));
    }

    let fx = skew_lines_threefold_rational(1).unwrap();
    write(dir, "cubic_q.json", &cubic_doc(0, &fx.terms));
    let denominators = fx.conic.coords.iter().flat_map(|p| p.coeffs().iter().map(|c| c.denom().clone()));
    let lcm = denominators.fold(BigInt::from(1), |acc, d| num_integer::Integer::lcm(&acc, &d));
    let e = fx.conic.e as usize;
    let coords = fx
        .conic
        .coords
        .iter()
        .map(|p| (0..=e).map(|i| p.coeffs().get(i).map_or(BigInt::from(0), |c| (c * &lcm).to_integer())).collect())
        .collect();
    write(dir, "conic_q.json", &CurveDoc { e: fx.conic.e, coords });
}
