//! Classes on the residue surface and their internal consistency.

use crate::coef::{Bindings, Coef};
use crate::error::Result;
use crate::eval::degree_polynomial;
use crate::expr::Expr;
use crate::normal::{normalize_in, xi_on_residue, Class, Model};
use crate::symbol::{Idx, Lin};

#[derive(Clone, Debug)]
pub struct ResidueClasses {
    pub model: Model,
    pub xi: Class,
    pub double_locus: Class,
    pub residue: Class,
    /// `(description, holds)` for each consistency identity.
    pub checks: Vec<(String, bool)>,
    /// `(xi|_S)^2` as a polynomial in the parameters.
    pub xi_squared: Coef,
}

/// Pullback of `c1` of the twisting line bundle.
fn twist(model: Model, meeting: bool) -> Expr {
    match model {
        Model::Single => Expr::d("a").add(Expr::lin(Lin::Delta0).scaled(2)),
        Model::Pair => {
            let base = Expr::lin(Lin::A1xC2).add(Expr::lin(Lin::C1xA2));
            if meeting {
                base.sub(Expr::lin(Lin::F(Idx::All)).scaled(2))
            } else {
                base
            }
        }
    }
}

fn xi(model: Model, meeting: bool) -> Expr {
    match (model, meeting) {
        (Model::Pair, false) => Expr::lin(Lin::A1xC2).add(Expr::lin(Lin::C1xA2)).scaled(2).sub(Expr::lin(Lin::E(Idx::All))),
        _ => xi_on_residue(model),
    }
}

fn classes(model: Model, meeting: bool) -> (Expr, Expr, Expr) {
    let e = Expr::lin(Lin::E(Idx::All));
    let f = Expr::lin(Lin::F(Idx::All));
    let xi = xi(model, meeting);
    let (d, s) = match model {
        Model::Single => {
            let base = |k: i64, j: i64| Expr::d("a").scaled(k).add(Expr::lin(Lin::Delta0).scaled(j));
            (base(3, 4).sub(e.clone().scaled(2)), base(3, 5).sub(e))
        }
        Model::Pair => {
            let base = Expr::lin(Lin::A1xC2).add(Expr::lin(Lin::C1xA2)).scaled(3);
            if meeting {
                (base.clone().sub(f.clone().scaled(4)).sub(e.clone().scaled(2)), base.sub(f.scaled(5)).sub(e))
            } else {
                (base.clone().sub(e.clone().scaled(2)), base.sub(e))
            }
        }
    };
    (xi, d, s)
}

fn is_zero(e: &Expr, model: Model) -> Result<bool> {
    Ok(normalize_in(e, model)?.class.is_zero())
}

/// `xi|_S`, `D|_S`, `S|_S` in normal form, checked against `D = 2 xi - M`,
/// `S = xi + M` and `D + S = 3 xi`, where `M` is the twisting class.
/// For the pair model `meeting = false` drops the classes over the meeting points.
pub fn residue_surface_classes(model: Model, meeting: bool) -> Result<ResidueClasses> {
    let (xi, d, s) = classes(model, meeting);
    let m = twist(model, meeting);
    let mut checks = Vec::new();
    let id1 = d.clone().sub(xi.clone().scaled(2)).add(m.clone());
    checks.push((format!("D|S - 2*xS + ({m}) = 0"), is_zero(&id1, model)?));
    let id2 = s.clone().sub(xi.clone()).sub(m.clone());
    checks.push((format!("S|S - xS - ({m}) = 0"), is_zero(&id2, model)?));
    let id3 = d.clone().add(s.clone()).sub(xi.clone().scaled(3));
    checks.push(("D|S + S|S - 3*xS = 0".to_string(), is_zero(&id3, model)?));
    let sq1 = degree_polynomial(&normalize_in(&xi.clone().mul(xi.clone()), model)?.class, &Bindings::new())?;
    let via = s.clone().sub(m.clone());
    let sq2 = degree_polynomial(&normalize_in(&via.clone().mul(via), model)?.class, &Bindings::new())?;
    checks.push(("(xS)^2 agrees with (S|S - M)^2".to_string(), sq1 == sq2));
    Ok(ResidueClasses {
        model,
        xi: normalize_in(&xi, model)?.class,
        double_locus: normalize_in(&d, model)?.class,
        residue: normalize_in(&s, model)?.class,
        checks,
        xi_squared: sq1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        for (model, meeting) in [(Model::Single, true), (Model::Pair, true), (Model::Pair, false)] {
            let r = residue_surface_classes(model, meeting).unwrap();
            for (name, ok) in &r.checks {
                assert!(ok, "{name} fails for {model:?}");
            }
        }
        let r = residue_surface_classes(Model::Pair, false).unwrap();
        assert_eq!(r.xi.to_string(), "2*A1xC2 + 2*C1xA2 - E[*]");
        let s = residue_surface_classes(Model::Single, true).unwrap();
        assert_eq!(s.xi_squared.to_string(), "4*e*e - 12*e - 9*g - N + 9");
    }
}
