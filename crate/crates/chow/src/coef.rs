//! Coefficients: polynomials over `Q` in the formal parameters.

use std::collections::BTreeMap;
use std::fmt;

use exactalg::{MultiPoly, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{ChowError, Result};

pub const PARAMS: [&str; 6] = ["e", "g", "e1", "e2", "r", "N"];

pub fn param_index(name: &str) -> Option<usize> {
    PARAMS.iter().position(|p| *p == name)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coef(MultiPoly<BigRational>);

impl Coef {
    pub fn zero() -> Coef {
        Coef(MultiPoly::zero(PARAMS.len()))
    }

    pub fn one() -> Coef {
        Coef::int(1)
    }

    pub fn int(v: i64) -> Coef {
        Coef::rational(BigRational::from_integer(v.into()))
    }

    pub fn integer(v: BigInt) -> Coef {
        Coef::rational(BigRational::from_integer(v))
    }

    pub fn rational(v: BigRational) -> Coef {
        Coef(MultiPoly::constant(PARAMS.len(), v, &Rationals))
    }

    pub fn param(name: &str) -> Coef {
        let i = param_index(name).expect("known parameter");
        Coef(MultiPoly::var(PARAMS.len(), i, &Rationals))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Coef) -> Coef {
        Coef(self.0.add(&o.0, &Rationals))
    }

    pub fn sub(&self, o: &Coef) -> Coef {
        Coef(self.0.sub(&o.0, &Rationals))
    }

    pub fn neg(&self) -> Coef {
        Coef(self.0.neg(&Rationals))
    }

    pub fn mul(&self, o: &Coef) -> Coef {
        Coef(self.0.mul(&o.0, &Rationals))
    }

    pub fn scale(&self, k: i64) -> Coef {
        self.mul(&Coef::int(k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.0.terms()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.0.num_terms() {
            0 => Some(BigRational::zero()),
            1 if self.0.total_degree() == Some(0) => Some(self.0.constant_term(&Rationals)),
            _ => None,
        }
    }

    /// Splits into `even + rest` where `even` has coefficients in `2Z` and `rest`
    /// has coefficients in `[0, 2)`; returns `(even / 2, rest)`.
    pub fn split_even(&self) -> (Coef, Coef) {
        let two = BigRational::from_integer(2.into());
        let mut half = Vec::new();
        let mut rest = Vec::new();
        for (e, c) in self.0.terms() {
            let k = (c / &two).floor();
            let s = c - &k * &two;
            half.push((e.clone(), k));
            rest.push((e.clone(), s));
        }
        (
            Coef(MultiPoly::from_terms(PARAMS.len(), half, &Rationals)),
            Coef(MultiPoly::from_terms(PARAMS.len(), rest, &Rationals)),
        )
    }

    /// Substitutes the bound parameters, leaving the others symbolic.
    pub fn bind(&self, b: &Bindings) -> Coef {
        let subs: Vec<MultiPoly<BigRational>> = PARAMS
            .iter()
            .enumerate()
            .map(|(i, name)| match b.get(name) {
                Some(v) => MultiPoly::constant(PARAMS.len(), BigRational::from_integer(v.clone()), &Rationals),
                None => MultiPoly::var(PARAMS.len(), i, &Rationals),
            })
            .collect();
        Coef(self.0.substitute(&subs, &Rationals))
    }

    pub fn free_params(&self) -> Vec<&'static str> {
        PARAMS
            .iter()
            .enumerate()
            .filter(|(i, _)| self.0.degree_in(*i).unwrap_or(0) > 0)
            .map(|(_, p)| *p)
            .collect()
    }

    /// Integer value with every parameter bound.
    pub fn evaluate(&self, b: &Bindings) -> Result<BigInt> {
        let v = self.bind(b);
        if let Some(p) = v.free_params().first() {
            return Err(ChowError::Unbound(p.to_string()));
        }
        let c = v.constant_value().unwrap();
        if !c.is_integer() {
            return Err(ChowError::NonInteger(c.to_string()));
        }
        Ok(c.to_integer())
    }

    fn is_single_term(&self) -> bool {
        self.0.num_terms() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

fn fmt_monomial(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            parts.push(PARAMS[i]);
        }
    }
    parts.join("*")
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // higher total degree first, then by exponent vector descending
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.0.terms().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(e);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Coef {
    /// Rendering as a factor in a product: parenthesized when it has several terms.
    pub fn as_factor(&self) -> String {
        if self.is_single_term() {
            self.to_string()
        } else {
            format!("({self})")
        }
    }

    pub fn is_negative_monomial(&self) -> bool {
        self.is_single_term() && self.0.terms().next().is_some_and(|(_, c)| c.is_negative())
    }
}

/// Integer values for parameters and for degrees of extra named divisors (`deg[b]`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<String, BigInt>);

impl Bindings {
    pub fn new() -> Bindings {
        Bindings::default()
    }

    pub fn with(mut self, name: &str, v: i64) -> Bindings {
        self.0.insert(name.to_string(), v.into());
        self
    }

    pub fn set(&mut self, name: &str, v: BigInt) {
        self.0.insert(name.to_string(), v);
    }

    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.0.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigInt)> {
        self.0.iter()
    }

    /// Parses `e=3,g=0,deg[b]=4`.
    pub fn parse(text: &str) -> Result<Bindings> {
        let mut b = Bindings::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| ChowError::Binding(format!("expected name=value in `{item}`")))?;
            let k = k.trim();
            let v: BigInt = v
                .trim()
                .parse()
                .map_err(|_| ChowError::Binding(format!("`{v}` is not an integer")))?;
            let valid = param_index(k).is_some() || (k.starts_with("deg[") && k.ends_with(']'));
            if !valid {
                return Err(ChowError::Binding(format!("unknown parameter `{k}`")));
            }
            b.0.insert(k.to_string(), v);
        }
        Ok(b)
    }
}

pub(crate) fn binomial2(d: &Coef) -> Coef {
    let half = Coef::rational(BigRational::new(1.into(), 2.into()));
    d.mul(&d.sub(&Coef::one())).mul(&half)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_split() {
        let c = Coef::param("e").mul(&Coef::param("e1")).scale(5).sub(&Coef::int(3));
        assert_eq!(c.to_string(), "5*e*e1 - 3");
        let (half, rest) = Coef::int(7).split_even();
        assert_eq!((half, rest), (Coef::int(3), Coef::int(1)));
        let (half, rest) = Coef::int(-3).split_even();
        assert_eq!((half, rest), (Coef::int(-2), Coef::int(1)));
    }

    #[test]
    fn binding_parse() {
        let b = Bindings::parse("e=3, g=0,deg[b]=4").unwrap();
        assert_eq!(b.get("e"), Some(&BigInt::from(3)));
        assert!(Bindings::parse("x=1").is_err());
        let c = Coef::param("e").mul(&Coef::param("g"));
        assert_eq!(c.evaluate(&b).unwrap(), BigInt::zero());
        assert!(matches!(c.evaluate(&Bindings::new()), Err(ChowError::Unbound(_))));
    }
}
