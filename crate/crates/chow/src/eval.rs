//! Degrees of grade-2 classes under the general-position evaluation map.

use num_bigint::BigInt;

use crate::coef::{binomial2, Bindings, Coef};
use crate::error::{ChowError, Result};
use crate::normal::Class;
use crate::symbol::{Name, Top};

/// Degree of a named divisor: `a, a1, a2` carry `e, e1, e2`, `K_C` has `2g - 2`,
/// and any other name needs a `deg[name]` binding.
pub fn divisor_degree(name: &Name, b: &Bindings) -> Result<Coef> {
    Ok(match name.0.as_str() {
        "a" => Coef::param("e"),
        "a1" => Coef::param("e1"),
        "a2" => Coef::param("e2"),
        "K_C" => Coef::param("g").scale(2).sub(&Coef::int(2)),
        other => {
            let key = format!("deg[{other}]");
            Coef::integer(b.get(&key).cloned().ok_or(ChowError::Unbound(key))?)
        }
    })
}

fn top_degree(t: &Top, b: &Bindings) -> Result<Coef> {
    Ok(match t {
        Top::Pt => Coef::one(),
        Top::Delta(a) => divisor_degree(a, b)?,
        Top::Pair2(a) => binomial2(&divisor_degree(a, b)?),
        Top::Cross(x, y) => divisor_degree(x, b)?.mul(&divisor_degree(y, b)?),
        // halving 2 Delta0^2 = -delta[K_C]
        Top::Delta0Sq => Coef::one().sub(&Coef::param("g")),
    })
}

/// Degree as a polynomial in the parameters left unbound.
pub fn degree_polynomial(c: &Class, b: &Bindings) -> Result<Coef> {
    if !c.linear.is_empty() {
        return Err(ChowError::GradeOne);
    }
    if c.scalar.is_some() && !c.top.is_empty() {
        return Err(ChowError::Inhomogeneous);
    }
    let mut acc = c.scalar.clone().unwrap_or_else(Coef::zero);
    for (t, k) in &c.top {
        acc = acc.add(&k.mul(&top_degree(t, b)?));
    }
    Ok(acc.bind(b))
}

/// Integer degree; every parameter must be bound.
pub fn evaluate(c: &Class, b: &Bindings) -> Result<BigInt> {
    degree_polynomial(c, b)?.evaluate(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::normal::normalize;

    fn ev(s: &str, b: &str) -> Result<BigInt> {
        evaluate(&normalize(&parse(s).unwrap())?.class, &Bindings::parse(b).unwrap())
    }

    #[test]
    fn known_values() {
        let s = "5*pair2[a] - 5*delta[a] - 3*delta[K_C]";
        assert_eq!(ev(s, "e=3,g=0").unwrap(), 6.into());
        assert_eq!(ev(s, "e=2,g=0").unwrap(), 1.into());
        assert_eq!(ev(s, "e=4,g=1").unwrap(), 10.into());
        assert_eq!(ev("Delta0*Delta0", "g=4").unwrap(), (-3).into());
        assert_eq!(ev("F[*]*F[*]", "r=3").unwrap(), (-3).into());
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(ev("delta[a]", "g=1"), Err(ChowError::Unbound("e".into())));
        assert_eq!(ev("D[a]", "e=1"), Err(ChowError::GradeOne));
        assert_eq!(ev("1 + pt", ""), Err(ChowError::Inhomogeneous));
        assert_eq!(ev("delta[b]", ""), Err(ChowError::Unbound("deg[b]".into())));
        assert_eq!(ev("D[a]*D[b]", "e=2,deg[b]=5").unwrap(), 10.into());
    }
}
