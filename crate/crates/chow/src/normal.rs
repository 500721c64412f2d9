//! Normalization by rewriting: distribution, expansion of the residue
//! hyperplane class, the multiplication table, and truncation above grade 2.

use std::collections::BTreeMap;
use std::fmt;

use crate::coef::Coef;
use crate::error::{ChowError, Result};
use crate::expr::Expr;
use crate::symbol::{Idx, Lin, Name, Symbol, Top};

/// Which surface the symbols live on; decides how `xS` expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// Blow-up of the symmetric square of one curve.
    Single,
    /// Blow-up of the product of two curves.
    Pair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Lin(Lin),
    Top(Top),
    XiS,
}

impl Factor {
    fn grade(&self) -> u32 {
        match self {
            Factor::Top(_) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Lin(l) => l.fmt(f),
            Factor::Top(t) => t.fmt(f),
            Factor::XiS => f.write_str("xS"),
        }
    }
}

#[derive(Clone, Debug)]
struct Term {
    coef: Coef,
    factors: Vec<Factor>,
}

impl Term {
    fn grade(&self) -> u32 {
        self.factors.iter().map(Factor::grade).sum()
    }
}

fn distribute(e: &Expr) -> Vec<Term> {
    match e {
        Expr::Num(v) => vec![Term { coef: Coef::integer(v.clone()), factors: vec![] }],
        Expr::Param(p) => vec![Term { coef: Coef::param(p), factors: vec![] }],
        Expr::Sym(s) => vec![Term {
            coef: Coef::one(),
            factors: vec![match s {
                Symbol::Lin(l) => Factor::Lin(l.clone()),
                Symbol::Top(t) => Factor::Top(t.clone()),
                Symbol::XiS => Factor::XiS,
            }],
        }],
        Expr::Neg(x) => negate(distribute(x)),
        Expr::Add(a, b) => {
            let mut v = distribute(a);
            v.extend(distribute(b));
            v
        }
        Expr::Sub(a, b) => {
            let mut v = distribute(a);
            v.extend(negate(distribute(b)));
            v
        }
        Expr::Mul(a, b) => {
            let (ta, tb) = (distribute(a), distribute(b));
            let mut out = Vec::with_capacity(ta.len() * tb.len());
            for x in &ta {
                for y in &tb {
                    let mut factors = x.factors.clone();
                    factors.extend(y.factors.iter().cloned());
                    out.push(Term { coef: x.coef.mul(&y.coef), factors });
                }
            }
            out
        }
    }
}

fn negate(v: Vec<Term>) -> Vec<Term> {
    v.into_iter().map(|t| Term { coef: t.coef.neg(), factors: t.factors }).collect()
}

/// Infers the model from the symbols present; the symmetric square is the default.
pub fn infer_model(e: &Expr) -> Model {
    fn walk(e: &Expr) -> bool {
        match e {
            Expr::Sym(Symbol::Lin(l)) => l.is_product_model(),
            Expr::Neg(x) => walk(x),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => walk(a) || walk(b),
            _ => false,
        }
    }
    if walk(e) {
        Model::Pair
    } else {
        Model::Single
    }
}

/// The class `xS` for each model.
pub fn xi_on_residue(model: Model) -> Expr {
    let esum = Expr::lin(Lin::E(Idx::All));
    match model {
        Model::Single => Expr::d("a").scaled(2).add(Expr::lin(Lin::Delta0).scaled(3)).sub(esum),
        Model::Pair => Expr::lin(Lin::A1xC2)
            .add(Expr::lin(Lin::C1xA2))
            .scaled(2)
            .sub(Expr::lin(Lin::F(Idx::All)).scaled(3))
            .sub(esum),
    }
}

/// Product of two grade-1 classes as a list of `(coefficient, class)`.
fn multiply(x: &Lin, y: &Lin) -> Result<(String, Vec<(Coef, Top)>)> {
    use Lin::*;
    let (x, y) = if x <= y { (x, y) } else { (y, x) };
    let rule = |s: &str, v: Vec<(Coef, Top)>| Ok((format!("{x}*{y} -> {s}"), v));
    match (x, y) {
        (D(a), D(b)) if a == b => rule(
            &format!("delta[{a}] + 2*pair2[{a}]"),
            vec![(Coef::one(), Top::Delta(a.clone())), (Coef::int(2), Top::Pair2(a.clone()))],
        ),
        (D(a), D(b)) => rule(&format!("D[{a}]*D[{b}]"), vec![(Coef::one(), Top::Cross(a.clone(), b.clone()))]),
        (D(a), Delta0) => rule(&format!("-delta[{a}]"), vec![(Coef::int(-1), Top::Delta(a.clone()))]),
        (Delta0, Delta0) => rule("Delta0*Delta0", vec![(Coef::one(), Top::Delta0Sq)]),
        (A1xC2, A1xC2) | (C1xA2, C1xA2) => rule("0", vec![]),
        (A1xC2, C1xA2) => rule("e1*e2*pt", vec![(Coef::param("e1").mul(&Coef::param("e2")), Top::Pt)]),
        (F(i), F(j)) | (E(i), E(j)) => {
            let count = if matches!(x, F(_)) { "r" } else { "N" };
            match (i, j) {
                (Idx::All, Idx::All) => rule(&format!("-{count}*pt"), vec![(Coef::param(count).neg(), Top::Pt)]),
                (Idx::One(a), Idx::One(b)) if a != b => rule("0", vec![]),
                _ => rule("-pt", vec![(Coef::int(-1), Top::Pt)]),
            }
        }
        (a, b) if (a.is_symmetric_model() && b.is_product_model()) || (a.is_product_model() && b.is_symmetric_model()) => {
            Err(ChowError::ModelMismatch(format!("{a}*{b}")))
        }
        // remaining pairs involve an exceptional class against a pullback or
        // against exceptional classes of the other blow-up
        _ => rule("0", vec![]),
    }
}

#[derive(Clone, Copy, Debug)]
enum Redex {
    Truncate(usize),
    Expand(usize, usize),
    Product(usize, usize, usize),
}

fn redexes(terms: &[Term]) -> Vec<Redex> {
    let mut out = Vec::new();
    for (t, term) in terms.iter().enumerate() {
        if term.grade() >= 3 {
            out.push(Redex::Truncate(t));
        }
        for (i, f) in term.factors.iter().enumerate() {
            if matches!(f, Factor::XiS) {
                out.push(Redex::Expand(t, i));
            }
        }
        if term.grade() == 2 && term.factors.len() == 2 {
            if let (Factor::Lin(_), Factor::Lin(_)) = (&term.factors[0], &term.factors[1]) {
                out.push(Redex::Product(t, 0, 1));
            }
        }
    }
    out
}

/// A class in normal form: a scalar, a grade-1 part and a grade-2 part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Class {
    pub scalar: Option<Coef>,
    pub linear: BTreeMap<Lin, Coef>,
    pub top: BTreeMap<Top, Coef>,
}

impl Class {
    pub fn is_zero(&self) -> bool {
        self.scalar.is_none() && self.linear.is_empty() && self.top.is_empty()
    }

    fn push<K: Ord>(map: &mut BTreeMap<K, Coef>, k: K, c: Coef) {
        let v = map.remove(&k).map_or(c.clone(), |old| old.add(&c));
        if !v.is_zero() {
            map.insert(k, v);
        }
    }

    fn add_scalar(&mut self, c: &Coef) {
        let v = self.scalar.take().map_or(c.clone(), |old| old.add(c));
        self.scalar = (!v.is_zero()).then_some(v);
    }

    /// The part of a given grade.
    pub fn grade(&self, k: u32) -> Class {
        match k {
            0 => Class { scalar: self.scalar.clone(), ..Class::default() },
            1 => Class { linear: self.linear.clone(), ..Class::default() },
            2 => Class { top: self.top.clone(), ..Class::default() },
            _ => Class::default(),
        }
    }

    pub fn to_expr(&self) -> Expr {
        let mut parts: Vec<(Coef, Option<Expr>)> = Vec::new();
        if let Some(c) = &self.scalar {
            parts.push((c.clone(), None));
        }
        for (l, c) in &self.linear {
            parts.push((c.clone(), Some(Expr::lin(l.clone()))));
        }
        for (t, c) in &self.top {
            let e = match t {
                Top::Cross(a, b) => Expr::lin(Lin::D(a.clone())).mul(Expr::lin(Lin::D(b.clone()))),
                Top::Delta0Sq => Expr::lin(Lin::Delta0).mul(Expr::lin(Lin::Delta0)),
                t => Expr::top(t.clone()),
            };
            parts.push((c.clone(), Some(e)));
        }
        let mut acc: Option<Expr> = None;
        for (c, e) in parts {
            let (neg, c) = if c.is_negative_monomial() { (true, c.neg()) } else { (false, c) };
            let ce = coef_expr(&c);
            let term = match e {
                None => ce,
                Some(e) if c.is_one() => e,
                Some(e) => ce.mul(e),
            };
            acc = Some(match (acc, neg) {
                (None, false) => term,
                // a leading sign goes on the coefficient so the output reads naturally
                (None, true) => negate_leftmost(term),
                (Some(a), false) => a.add(term),
                (Some(a), true) => a.sub(term),
            });
        }
        acc.unwrap_or_else(|| Expr::num(0))
    }

    pub fn add(&self, o: &Class) -> Class {
        let mut r = self.clone();
        if let Some(c) = &o.scalar {
            r.add_scalar(c);
        }
        for (k, c) in &o.linear {
            Class::push(&mut r.linear, k.clone(), c.clone());
        }
        for (k, c) in &o.top {
            Class::push(&mut r.top, k.clone(), c.clone());
        }
        r
    }
}

fn negate_leftmost(e: Expr) -> Expr {
    match e {
        Expr::Mul(a, b) => Expr::Mul(Box::new(negate_leftmost(*a)), b),
        other => other.neg(),
    }
}

/// Coefficient polynomials rendered in the expression grammar.
fn coef_expr(c: &Coef) -> Expr {
    crate::expr::parse(&c.to_string()).expect("coefficients print in the grammar")
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Result of a normalization run.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub class: Class,
    pub model: Model,
    /// The expression distributed and collected before any rule is applied.
    pub expanded: String,
    pub trace: Vec<String>,
}

/// Normalizes with the leftmost-first strategy.
pub fn normalize(e: &Expr) -> Result<Normalized> {
    normalize_with(e, None, &mut |_| 0)
}

pub fn normalize_in(e: &Expr, model: Model) -> Result<Normalized> {
    normalize_with(e, Some(model), &mut |_| 0)
}

/// Normalizes, letting `choose(n)` pick which of the `n` available redexes fires next.
pub fn normalize_with(e: &Expr, model: Option<Model>, choose: &mut dyn FnMut(usize) -> usize) -> Result<Normalized> {
    let model = model.unwrap_or_else(|| infer_model(e));
    let mut terms = distribute(e);
    let expanded = collect_expanded(&terms);
    let mut trace = Vec::new();
    let xi = distribute(&xi_on_residue(model));
    loop {
        let rs = redexes(&terms);
        if rs.is_empty() {
            break;
        }
        match rs[choose(rs.len()) % rs.len()] {
            Redex::Truncate(t) => {
                let term = terms.remove(t);
                trace.push(format!("drop grade-{} term", term.grade()));
            }
            Redex::Expand(t, i) => {
                let term = terms.remove(t);
                for x in &xi {
                    let mut factors = term.factors.clone();
                    factors.splice(i..=i, x.factors.iter().cloned());
                    terms.push(Term { coef: term.coef.mul(&x.coef), factors });
                }
                trace.push(format!("xS -> {}", xi_on_residue(model)));
            }
            Redex::Product(t, i, j) => {
                let term = terms.remove(t);
                let (Factor::Lin(x), Factor::Lin(y)) = (&term.factors[i], &term.factors[j]) else { unreachable!() };
                let (rule, out) = multiply(x, y)?;
                trace.push(rule);
                for (c, top) in out {
                    terms.push(Term { coef: term.coef.mul(&c), factors: vec![Factor::Top(top)] });
                }
            }
        }
    }
    let mut class = Class::default();
    for t in terms {
        match t.factors.as_slice() {
            [] => class.add_scalar(&t.coef),
            [Factor::Lin(l)] => Class::push(&mut class.linear, l.clone(), t.coef),
            [Factor::Top(x)] => Class::push(&mut class.top, x.clone(), t.coef),
            _ => unreachable!("irreducible term left after rewriting"),
        }
    }
    if let Some(c) = class.top.remove(&Top::Delta0Sq) {
        let (half, rest) = c.split_even();
        if !half.is_zero() {
            trace.push(format!(
                "{}*Delta0*Delta0 -> {}*delta[K_C]",
                half.scale(2).as_factor(),
                half.neg().as_factor()
            ));
            Class::push(&mut class.top, Top::Delta(Name::canonical()), half.neg());
        }
        if !rest.is_zero() {
            class.top.insert(Top::Delta0Sq, rest);
        }
    }
    Ok(Normalized { class, model, expanded, trace })
}

fn collect_expanded(terms: &[Term]) -> String {
    let mut map: BTreeMap<Vec<String>, Coef> = BTreeMap::new();
    let mut order: Vec<Vec<String>> = Vec::new();
    for t in terms {
        let mut key: Vec<String> = t.factors.iter().map(|f| f.to_string()).collect();
        key.sort();
        if !map.contains_key(&key) {
            order.push(key.clone());
        }
        let v = map.remove(&key).map_or(t.coef.clone(), |c| c.add(&t.coef));
        map.insert(key, v);
    }
    let mut out = String::new();
    for key in order {
        let c = &map[&key];
        if c.is_zero() {
            continue;
        }
        let (neg, c) = if c.is_negative_monomial() { (true, c.neg()) } else { (false, c.clone()) };
        let body = key.join("*");
        let term = match (body.is_empty(), c.is_one()) {
            (true, _) => c.to_string(),
            (false, true) => body,
            (false, false) => format!("{}*{}", c.as_factor(), body),
        };
        match (out.is_empty(), neg) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn nf(s: &str) -> String {
        normalize(&parse(s).unwrap()).unwrap().class.to_string()
    }

    #[test]
    fn multiplication_table() {
        assert_eq!(nf("D[a]*D[a]"), "2*pair2[a] + delta[a]");
        assert_eq!(nf("D[a]*Delta0"), "-delta[a]");
        assert_eq!(nf("Delta0*Delta0"), "Delta0*Delta0");
        assert_eq!(nf("2*Delta0*Delta0"), "-delta[K_C]");
        assert_eq!(nf("3*Delta0*Delta0"), "-delta[K_C] + Delta0*Delta0");
        assert_eq!(nf("F[*]*F[*]"), "-r*pt");
        assert_eq!(nf("F[1]*F[2] + F[2]*F[2]"), "-pt");
        assert_eq!(nf("A1xC2*C1xA2"), "e1*e2*pt");
        assert_eq!(nf("D[a]*D[a]*D[a]"), "0");
        assert!(matches!(normalize(&parse("D[a]*A1xC2").unwrap()), Err(ChowError::ModelMismatch(_))));
    }

    #[test]
    fn secant_pipeline_display() {
        let n = normalize(&parse("(D[a] + Delta0)*(D[a] + 2*Delta0) + pair2[a] + (D[a] + 2*Delta0)*(D[a] + 2*Delta0)").unwrap()).unwrap();
        assert_eq!(n.expanded, "2*D[a]*D[a] + 7*D[a]*Delta0 + 6*Delta0*Delta0 + pair2[a]");
        assert_eq!(n.class.to_string(), "5*pair2[a] - 5*delta[a] - 3*delta[K_C]");
    }
}
