//! Chern-class computations for the secant-line counts.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coef::{Bindings, Coef};
use crate::error::Result;
use crate::eval::{degree_polynomial, evaluate};
use crate::expr::Expr;
use crate::normal::{normalize_in, Model};
use crate::symbol::{Idx, Lin};

/// A worked computation `c2(E (x) L)` with its rewrite trace.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub c1: String,
    pub c2: String,
    pub twist: String,
    pub expression: String,
    pub expanded: String,
    pub normal_form: String,
    pub symbolic_degree: String,
    pub value: BigInt,
    pub formula: BigInt,
    pub symbolic_match: bool,
    pub matched: bool,
    pub trace: Vec<String>,
}

/// `N(e, g) = 5e(e-3)/2 + 6 - 6g`.
pub fn secant_count_formula(e: i64, g: i64) -> BigInt {
    BigInt::from(5 * e * (e - 3) / 2 + 6 - 6 * g)
}

/// `5 e1 e2 - 6 r`.
pub fn pair_count_formula(e1: i64, e2: i64, r: i64) -> BigInt {
    BigInt::from(5 * e1 * e2 - 6 * r)
}

/// Count for a line meeting a degree-`e` curve once.
pub fn line_meeting_count_formula(e: i64) -> BigInt {
    BigInt::from(5 * e - 5)
}

fn secant_formula_poly() -> Coef {
    let e = Coef::param("e");
    let half = Coef::rational(BigRational::new(5.into(), 2.into()));
    half.mul(&e).mul(&e.sub(&Coef::int(3))).add(&Coef::int(6)).sub(&Coef::param("g").scale(6))
}

fn pair_formula_poly() -> Coef {
    Coef::param("e1").mul(&Coef::param("e2")).scale(5).sub(&Coef::param("r").scale(6))
}

/// `c2(E (x) L) = c1(E) M + c2(E) + M^2` for `c1(L) = M`.
fn twisted_c2(c1: &Expr, c2: &Expr, m: &Expr) -> Expr {
    c1.clone().mul(m.clone()).add(c2.clone()).add(m.clone().mul(m.clone()))
}

fn run(c1: Expr, c2: Expr, m: Expr, model: Model, b: &Bindings, formula_poly: Coef, formula: BigInt) -> Result<Derivation> {
    let expr = twisted_c2(&c1, &c2, &m);
    let n = normalize_in(&expr, model)?;
    let symbolic = degree_polynomial(&n.class, &Bindings::new())?;
    let value = evaluate(&n.class, b)?;
    let symbolic_match = symbolic == formula_poly;
    let mut trace = vec![
        format!("c2(E(L)) = c1(E)*M + c2(E) + M*M with c1(E) = {c1}, c2(E) = {c2}, M = {m}"),
        format!("= {expr}"),
        format!("= {}", n.expanded),
    ];
    trace.extend(n.trace.iter().map(|r| format!("  rule {r}")));
    trace.push(format!("= {}", n.class));
    trace.push(format!("== {symbolic}"));
    let bound: Vec<String> = b.iter().map(|(k, v)| format!("{k}={v}")).collect();
    trace.push(format!("== {value} at {}", bound.join(", ")));
    Ok(Derivation {
        c1: c1.to_string(),
        c2: c2.to_string(),
        twist: m.to_string(),
        expression: expr.to_string(),
        expanded: n.expanded,
        normal_form: n.class.to_string(),
        symbolic_degree: symbolic.to_string(),
        matched: value == formula && symbolic_match,
        value,
        formula,
        symbolic_match,
        trace,
    })
}

/// Secant lines of one curve of degree `e` and genus `g`.
pub fn derive_secant_count(e: i64, g: i64) -> Result<Derivation> {
    let da = Expr::d("a");
    let d0 = Expr::lin(Lin::Delta0);
    let c1 = da.clone().add(d0.clone());
    let c2 = Expr::top(crate::symbol::Top::Pair2(crate::symbol::Name::new("a")));
    let m = da.add(d0.scaled(2));
    let b = Bindings::new().with("e", e).with("g", g);
    run(c1, c2, m, Model::Single, &b, secant_formula_poly(), secant_count_formula(e, g))
}

/// Secant lines of a pair of curves of degrees `e1, e2` meeting in `r` points.
pub fn derive_pair_count(e1: i64, e2: i64, r: i64) -> Result<Derivation> {
    let a = Expr::lin(Lin::A1xC2);
    let bb = Expr::lin(Lin::C1xA2);
    let f = Expr::lin(Lin::F(Idx::All));
    let c1 = a.clone().add(bb.clone()).sub(f.clone());
    let c2 = a.clone().mul(bb.clone());
    let m = a.add(bb).sub(f.scaled(2));
    let b = Bindings::new().with("e1", e1).with("e2", e2).with("r", r);
    run(c1, c2, m, Model::Pair, &b, pair_formula_poly(), pair_count_formula(e1, e2, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        for (e, v) in [(2, 1), (3, 6), (5, 31)] {
            let d = derive_secant_count(e, 0).unwrap();
            assert_eq!(d.value, BigInt::from(v));
            assert!(d.matched);
        }
        let d = derive_secant_count(3, 0).unwrap();
        assert_eq!(d.expanded, "2*D[a]*D[a] + 7*D[a]*Delta0 + 6*Delta0*Delta0 + pair2[a]");
        assert_eq!(d.normal_form, "5*pair2[a] - 5*delta[a] - 3*delta[K_C]");
        let p = derive_pair_count(1, 2, 1).unwrap();
        assert_eq!(p.normal_form, "(5*e1*e2 - 6*r)*pt");
        assert_eq!(p.value, BigInt::from(4));
    }
}
