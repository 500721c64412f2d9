//! Brute-force secant scan over an explicit list of lines.
//!
//! Each candidate line is tested against the curves through the restrictions
//! of the linear forms cutting it out, with no elimination involved. It is
//! used to cross-check the resultant pipeline on lines rational over the
//! base field.

use exactalg::linalg::{kernel, rank};
use exactalg::{Field, Ground, UniPoly};

use crate::curves::RationalCurve;
use crate::error::Result;
use crate::solve::Param;
use crate::space::{embed_upoly, embed_vec, field, El, ProjLine};

/// The scheme `line ∩ curve` as a binary form: `finite` collects the roots in
/// `z`, `at_infinity` the order at `z = ∞`.
#[derive(Clone, Debug)]
pub struct Incidence<E> {
    pub level: u32,
    pub finite: UniPoly<E>,
    pub at_infinity: usize,
}

impl<E: Clone + Eq> Incidence<E> {
    pub fn length(&self) -> usize {
        self.finite.degree().unwrap_or(0) + self.at_infinity
    }
}

/// `None` when the curve lies on the line.
pub fn incidence<G: Ground>(g: &G, l: &ProjLine<El<G>>, c: &RationalCurve<El<G>>) -> Result<Option<Incidence<El<G>>>> {
    let level = g.join(l.level, c.level);
    let f = field(g, level)?;
    let rows = l.basis_at(g, level)?;
    let coords: Vec<UniPoly<El<G>>> = c.coords.iter().map(|p| embed_upoly(g, p, c.level, level)).collect::<Result<_>>()?;
    let mut gcd = UniPoly::zero();
    let mut inf = usize::MAX;
    for k in kernel(&rows, rows[0].len(), &f) {
        let mut h = UniPoly::zero();
        for (kj, pj) in k.iter().zip(&coords) {
            h = h.add(&pj.scale(kj, &f), &f);
        }
        if let Some(d) = h.degree() {
            inf = inf.min(c.e as usize - d);
            gcd = gcd.gcd(&h, &f);
        }
    }
    if gcd.is_zero() {
        return Ok(None);
    }
    Ok(Some(Incidence { level, finite: gcd.monic(&f), at_infinity: inf }))
}

/// The point of the incidence when it is supported at a single parameter.
fn single_parameter<G: Ground>(g: &G, inc: &Incidence<El<G>>) -> Result<Option<Param<El<G>>>> {
    let f = field(g, inc.level)?;
    let p = &inc.finite;
    let sqfree = if p.degree().unwrap_or(0) == 0 { UniPoly::one(&f) } else { p.div_exact(&p.gcd(&p.derivative(&f), &f), &f).expect("gcd divides") };
    match (sqfree.degree().unwrap_or(0), inc.at_infinity) {
        (0, a) if a > 0 => Ok(Some(Param::Infinity)),
        (1, 0) => Ok(Some(Param::Finite(f.neg(&sqfree.coeffs()[0])))),
        _ => Ok(None),
    }
}

/// Lines of `candidates` that are secants of `a` (`b = None`) or of the pair.
///
/// A pair secant meets both curves in two distinct points, or passes through
/// a common point of the curves inside the plane of their tangent lines.
pub fn scan_secants<G: Ground>(
    g: &G,
    candidates: &[ProjLine<El<G>>],
    a: &RationalCurve<El<G>>,
    b: Option<&RationalCurve<El<G>>>,
) -> Result<Vec<ProjLine<El<G>>>> {
    let mut out = Vec::new();
    for l in candidates {
        let Some(ia) = incidence(g, l, a)? else { continue };
        let keep = match b {
            None => ia.length() >= 2,
            Some(b) => {
                let Some(ib) = incidence(g, l, b)? else { continue };
                ia.length() > 0 && ib.length() > 0 && pair_condition(g, l, a, b, &ia, &ib)?
            }
        };
        if keep {
            out.push(l.clone());
        }
    }
    out.sort();
    Ok(out)
}

fn pair_condition<G: Ground>(
    g: &G,
    l: &ProjLine<El<G>>,
    a: &RationalCurve<El<G>>,
    b: &RationalCurve<El<G>>,
    ia: &Incidence<El<G>>,
    ib: &Incidence<El<G>>,
) -> Result<bool> {
    let (Some(s), Some(t)) = (single_parameter(g, ia)?, single_parameter(g, ib)?) else {
        return Ok(true);
    };
    let level = g.join(ia.level, ib.level);
    let f = field(g, level)?;
    let s = lift(g, s, ia.level, level)?;
    let t = lift(g, t, ib.level, level)?;
    let p = a.eval(g, level, &s)?;
    let q = b.eval(g, level, &t)?;
    if rank(&vec![p.clone(), q], &f) == 2 {
        return Ok(true);
    }
    let [a0, a1] = a.partials(g, level, &s)?;
    let [b0, b1] = b.partials(g, level, &t)?;
    let plane = vec![p, a0, a1, b0, b1];
    if rank(&plane, &f) != 3 {
        return Ok(false);
    }
    let mut with_line = plane;
    with_line.extend(l.basis_at(g, level)?);
    Ok(rank(&with_line, &f) == 3)
}

fn lift<G: Ground>(g: &G, p: Param<El<G>>, from: u32, to: u32) -> Result<Param<El<G>>> {
    Ok(match p {
        Param::Finite(z) => Param::Finite(embed_vec(g, &[z], from, to)?.remove(0)),
        Param::Infinity => Param::Infinity,
    })
}
