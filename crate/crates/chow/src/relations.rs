//! Degree bookkeeping for the cycle relations among curves, secant lines and
//! the class of a plane section.

use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::derive::{line_meeting_count_formula, pair_count_formula, secant_count_formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `(2e-3) C + sum a_i E_i = ((e-1)(3e-4)/2 - 2g) h^{n-2}` for one curve.
    SingleCurve,
    /// `2 e2 C1 + 2 e1 C2 + sum a_i E_i = (3 e1 e2 - 2r) h^{n-2}` for a pair.
    Pair,
    /// `(2e-1) L + 2 C + sum a_i E_i = (3e-2) h^{n-2}` for a line meeting a curve once.
    LineMeeting,
}

impl Relation {
    /// Accepts the names below and the numeric aliases `4.1`, `4.2`, `4.3`.
    pub fn from_label(s: &str) -> Option<Relation> {
        match s {
            "4.1" | "single" => Some(Relation::SingleCurve),
            "4.2" | "pair" => Some(Relation::Pair),
            "4.3" | "line" => Some(Relation::LineMeeting),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Relation::SingleCurve => "single",
            Relation::Pair => "pair",
            Relation::LineMeeting => "line",
        }
    }

    pub fn params(&self) -> &'static [&'static str] {
        match self {
            Relation::SingleCurve => &["e", "g"],
            Relation::Pair => &["e1", "e2", "r"],
            Relation::LineMeeting => &["e"],
        }
    }

    pub fn default_ranges(&self) -> Vec<RangeInclusive<i64>> {
        match self {
            Relation::SingleCurve => vec![2..=12, 0..=10],
            Relation::Pair => vec![1..=8, 1..=8, 0..=4],
            Relation::LineMeeting => vec![2..=12],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRow {
    pub params: Vec<i64>,
    /// Degree of the left side, with the secant count for `sum a_i`.
    pub lhs: BigInt,
    /// Three times the coefficient of `h^{n-2}`.
    pub rhs: BigInt,
    pub secant_count: BigInt,
    pub pass: bool,
}

fn row(rel: Relation, p: &[i64]) -> RelationRow {
    let (lhs_curves, secants, coeff_times_two) = match rel {
        Relation::SingleCurve => {
            let (e, g) = (p[0], p[1]);
            ((2 * e - 3) * e, secant_count_formula(e, g), (e - 1) * (3 * e - 4) - 4 * g)
        }
        Relation::Pair => {
            let (e1, e2, r) = (p[0], p[1], p[2]);
            (2 * e2 * e1 + 2 * e1 * e2, pair_count_formula(e1, e2, r), 2 * (3 * e1 * e2 - 2 * r))
        }
        Relation::LineMeeting => {
            let e = p[0];
            ((2 * e - 1) + 2 * e, line_meeting_count_formula(e), 2 * (3 * e - 2))
        }
    };
    let lhs = BigInt::from(lhs_curves) + &secants;
    // the coefficient is an integer exactly when 3 * (coeff * 2) / 2 is
    let rhs2 = BigInt::from(3 * coeff_times_two);
    let pass = coeff_times_two % 2 == 0 && BigInt::from(2) * &lhs == rhs2;
    RelationRow { params: p.to_vec(), lhs, rhs: rhs2 / 2, secant_count: secants, pass }
}

/// Checks the relation on every tuple of the given ranges.
pub fn relation_degree_check(rel: Relation, ranges: &[RangeInclusive<i64>]) -> Vec<RelationRow> {
    assert_eq!(ranges.len(), rel.params().len(), "one range per parameter");
    let mut rows = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| *r.start()).collect();
    if ranges.iter().any(|r| r.is_empty()) {
        return rows;
    }
    loop {
        rows.push(row(rel, &cur));
        let mut k = cur.len();
        loop {
            if k == 0 {
                return rows;
            }
            k -= 1;
            if cur[k] < *ranges[k].end() {
                cur[k] += 1;
                for j in k + 1..cur.len() {
                    cur[j] = *ranges[j].start();
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let r = row(Relation::SingleCurve, &[2, 0]);
        assert_eq!((r.lhs.clone(), r.rhs.clone(), r.pass), (3.into(), 3.into(), true));
        let r = row(Relation::Pair, &[1, 1, 0]);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (9.into(), 9.into()));
        let r = row(Relation::LineMeeting, &[2]);
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (12.into(), 12.into()));
    }

    #[test]
    fn full_ranges_pass() {
        for rel in [Relation::SingleCurve, Relation::Pair, Relation::LineMeeting] {
            let rows = relation_degree_check(rel, &rel.default_ranges());
            assert!(!rows.is_empty());
            assert!(rows.iter().all(|r| r.pass), "{rel:?}");
        }
    }
}
