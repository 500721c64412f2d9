//! Input documents and inline point/line syntax.

use std::path::Path;

use exactalg::{Field, Ground};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use cubisect::curves::RationalCurve;
use cubisect::space::{field, point, span, El, Point, ProjLine};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: Vec<u32>,
    #[serde(with = "int")]
    pub coeff: BigInt,
}

/// `{"p": 7, "n": 4, "monomials": [...]}`; `p = 0` means the rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicDoc {
    pub p: u32,
    pub n: usize,
    pub monomials: Vec<Monomial>,
}

impl CubicDoc {
    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        self.monomials.iter().map(|m| (m.exps.clone(), m.coeff.clone())).collect()
    }
}

/// `{"e": 2, "coords": [[c0, .., ce], ...]}`, coefficient `i` of `s0^i s1^(e-i)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub e: u32,
    #[serde(with = "int_rows")]
    pub coords: Vec<Vec<BigInt>>,
}

impl CurveDoc {
    pub fn from_curve(c: &RationalCurve<u32>) -> CurveDoc {
        let e = c.e as usize;
        let coords = c
            .coords
            .iter()
            .map(|p| (0..=e).map(|i| BigInt::from(p.coeffs().get(i).copied().unwrap_or(0))).collect())
            .collect();
        CurveDoc { e: c.e, coords }
    }

    pub fn curve<G: Ground>(&self, g: &G) -> Result<RationalCurve<El<G>>, CliError> {
        Ok(RationalCurve::from_integer_coords(g, self.e, &self.coords)?)
    }
}

/// Integers are JSON numbers; values beyond 64 bits may be given as decimal strings.
mod int {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    pub fn to_value<E: Error>(v: &Value) -> Result<BigInt, E> {
        let text = match v {
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            Value::String(s) => s.clone(),
            other => return Err(E::custom(format!("expected an integer, got {other}"))),
        };
        text.trim().parse().map_err(|_| E::custom(format!("`{text}` is not an integer")))
    }

    pub fn from_bigint(v: &BigInt) -> Value {
        match i64::try_from(v) {
            Ok(n) => Value::from(n),
            Err(_) => Value::from(v.to_string()),
        }
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&from_bigint(v), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        to_value(&Value::deserialize(d)?)
    }
}

mod int_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};
    use serde_json::Value;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Value>> = v.iter().map(|r| r.iter().map(super::int::from_bigint).collect()).collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let rows: Vec<Vec<Value>> = Vec::deserialize(d)?;
        rows.iter().map(|r| r.iter().map(super::int::to_value).collect()).collect()
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn integers(text: &str) -> Result<Vec<BigInt>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("`{t}` is not an integer"))))
        .collect()
}

fn vector<G: Ground>(g: &G, text: &str, len: usize) -> Result<Vec<El<G>>, CliError> {
    let f = field(g, 1)?;
    let v = integers(text)?;
    if v.len() != len {
        return Err(CliError::Usage(format!("expected {len} coordinates, got {}", v.len())));
    }
    Ok(v.iter().map(|x| f.from_bigint(x)).collect())
}

/// `1,-1,0,0,0`.
pub fn parse_point<G: Ground>(g: &G, text: &str, len: usize) -> Result<Point<El<G>>, CliError> {
    Ok(point(g, 1, &vector(g, text, len)?)?)
}

/// `1,0,0,0,0;0,1,0,0,0`, two points spanning the line.
pub fn parse_line<G: Ground>(g: &G, text: &str, len: usize) -> Result<ProjLine<El<G>>, CliError> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage("a line is given as two points separated by `;`".into()));
    }
    let a = vector(g, parts[0], len)?;
    let b = vector(g, parts[1], len)?;
    Ok(span(g, 1, &[a, b])?)
}

/// `e1=1..8,e2=1..8,r=0..4`; a single value `r=2` is a one-point range.
pub fn parse_ranges(text: &str) -> Result<Vec<(String, std::ops::RangeInclusive<i64>)>, CliError> {
    let bad = |s: &str| CliError::Usage(format!("bad range `{s}`"));
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (k, v) = item.split_once('=').ok_or_else(|| bad(item))?;
            let (lo, hi) = match v.split_once("..") {
                Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
                None => (v, v),
            };
            let lo: i64 = lo.trim().parse().map_err(|_| bad(item))?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad(item))?;
            Ok((k.trim().to_string(), lo..=hi))
        })
        .collect()
}
