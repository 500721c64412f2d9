//! JSON encodings of field elements and geometric objects.
//!
//! Elements of `F_{p^k}` are coefficient vectors over `F_p` in the basis of
//! the level's defining polynomial (`F_p` itself is encoded as plain integers);
//! rationals are strings.

use std::cell::RefCell;
use std::collections::BTreeSet;

use exactalg::{FieldTower, Ground, RationalGround};
use serde_json::{json, Value};

use cubisect::cubic::{Component, LinesThroughPoint, PlaneSection};
use cubisect::secant::{SecantKind, SecantReport};
use cubisect::solve::Param;
use cubisect::space::{El, Point, Subspace};

pub trait GroundJson: Ground {
    fn elem(&self, level: u32, x: &El<Self>) -> Value;
    /// Characteristic and defining data of the levels that appear in a report.
    fn describe(&self, levels: &BTreeSet<u32>) -> Value;
}

impl GroundJson for FieldTower {
    fn elem(&self, level: u32, x: &u32) -> Value {
        if level == 1 {
            return json!(x);
        }
        match self.level(level) {
            Ok(f) => json!(f.digits(*x)),
            Err(_) => json!(null),
        }
    }

    fn describe(&self, levels: &BTreeSet<u32>) -> Value {
        let polys: serde_json::Map<String, Value> = levels
            .iter()
            .filter_map(|k| self.defining_polynomial(*k).ok().map(|p| (k.to_string(), json!(p))))
            .collect();
        json!({ "p": self.p(), "budget": self.budget(), "defining_polynomials": polys })
    }
}

impl GroundJson for RationalGround {
    fn elem(&self, _level: u32, x: &El<Self>) -> Value {
        json!(x.to_string())
    }

    fn describe(&self, _levels: &BTreeSet<u32>) -> Value {
        json!({ "p": 0 })
    }
}

/// Encodes objects and remembers which tower levels were touched.
pub struct Enc<'a, G: GroundJson> {
    pub g: &'a G,
    levels: RefCell<BTreeSet<u32>>,
}

impl<'a, G: GroundJson> Enc<'a, G> {
    pub fn new(g: &'a G) -> Self {
        Enc { g, levels: RefCell::new(BTreeSet::from([1])) }
    }

    pub fn tower(&self) -> Value {
        self.g.describe(&self.levels.borrow())
    }

    fn touch(&self, level: u32) {
        self.levels.borrow_mut().insert(level);
    }

    pub fn vec(&self, level: u32, v: &[El<G>]) -> Value {
        self.touch(level);
        Value::Array(v.iter().map(|x| self.g.elem(level, x)).collect())
    }

    pub fn point(&self, p: &Point<El<G>>) -> Value {
        json!({ "level": p.level, "coords": self.vec(p.level, &p.coords) })
    }

    pub fn subspace(&self, s: &Subspace<El<G>>) -> Value {
        let rows: Vec<Value> = s.rows.iter().map(|r| self.vec(s.level, r)).collect();
        let mut out = json!({ "level": s.level, "rows": rows });
        if s.rows.len() == 2 {
            if let Ok(p) = s.plucker(self.g) {
                out["plucker"] = self.vec(s.level, &p);
            }
        }
        out
    }

    pub fn param(&self, level: u32, p: &Param<El<G>>) -> Value {
        match p {
            Param::Finite(z) => {
                self.touch(level);
                self.g.elem(level, z)
            }
            Param::Infinity => json!("inf"),
        }
    }

    pub fn report(&self, r: &SecantReport<El<G>>) -> Value {
        let lines: Vec<Value> = r
            .lines
            .iter()
            .map(|s| {
                let kind = match s.kind {
                    SecantKind::OffDiagonal => "off-diagonal",
                    SecantKind::Tangent => "tangent",
                    SecantKind::AtMeetingPoint => "at-meeting-point",
                };
                let params = s.params.as_ref().map(|(lvl, z, w)| json!({ "level": lvl, "s": self.param(*lvl, z), "t": self.param(*lvl, w) }));
                json!({
                    "line": self.subspace(&s.line),
                    "kind": kind,
                    "multiplicity": s.multiplicity,
                    "params": params,
                    "verified": s.verified,
                })
            })
            .collect();
        let excised: Vec<Value> = r.excised.iter().map(|(p, m)| json!({ "point": self.point(p), "multiplicity": m })).collect();
        let checks: serde_json::Map<String, Value> = r.checks.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({
            "mode": format!("{:?}", r.mode).to_lowercase(),
            "count_with_multiplicity": r.count_with_multiplicity,
            "distinct_count": r.distinct_count,
            "expected": r.expected,
            "well_positioned": r.well_positioned,
            "infinite": r.infinite,
            "unsplit_degree": r.unsplit_degree,
            "levels_used": r.levels_used,
            "lines": lines,
            "excised": excised,
            "notes": r.spurious,
            "checks": checks,
        })
    }

    pub fn lines_through(&self, r: &LinesThroughPoint<El<G>>) -> Value {
        let lines: Vec<Value> = r.lines.iter().map(|(l, m)| json!({ "line": self.subspace(l), "multiplicity": m })).collect();
        json!({
            "point": self.point(&r.point),
            "eckardt": r.eckardt,
            "lines": lines,
            "unsplit_degree": r.unsplit_degree,
            "total": r.total(),
        })
    }

    pub fn section(&self, s: &PlaneSection<El<G>>, level: u32) -> Value {
        let comps: Vec<Value> = s
            .components
            .iter()
            .map(|(c, m)| match c {
                Component::Line(l) => json!({ "line": self.subspace(l), "multiplicity": m }),
                Component::Conic(q) => {
                    let text = self.g.level(level).map(|f| q.format(&f, &["u0", "u1", "u2"])).unwrap_or_default();
                    json!({ "conic": text, "multiplicity": m })
                }
            })
            .collect();
        json!({ "kind": s.kind.label(), "components": comps, "unresolved": s.unresolved })
    }
}
