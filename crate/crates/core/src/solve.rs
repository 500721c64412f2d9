//! Zero-dimensional systems of two equations in two unknowns, solved by
//! projection: a resultant gives the second coordinate, fiber gcds give the
//! first, and local multiplicities come from Fulton's algorithm.

use exactalg::local::intersection_multiplicity_at;
use exactalg::resultant::resultant_in;
use exactalg::{Field, Ground, MultiPoly, UniPoly};

use crate::error::{GeomError, Result};
use crate::space::{embed_mpoly, field, El};

/// An affine coordinate on `P^1`; `z = s0/s1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param<E> {
    Finite(E),
    Infinity,
}

impl<E: Clone> Param<E> {
    pub fn finite(&self) -> Option<&E> {
        match self {
            Param::Finite(x) => Some(x),
            Param::Infinity => None,
        }
    }
}

/// A solution `(z, w)` with its local intersection multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution<E> {
    pub level: u32,
    pub z: Param<E>,
    pub w: Param<E>,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solved<E> {
    pub solutions: Vec<Solution<E>>,
    /// Degree of the projection that could not be split within the budget.
    pub unsplit_degree: usize,
}

impl<E> Solved<E> {
    pub fn total(&self) -> u64 {
        self.solutions.iter().map(|s| s.multiplicity).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve<E> {
    Finite(Solved<E>),
    PositiveDimensional,
}

/// A polynomial in `(z, w)` read as a bihomogeneous form of the given bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiForm<E> {
    pub poly: MultiPoly<E>,
    pub deg: (u32, u32),
}

impl<E: Clone + Eq> BiForm<E> {
    pub fn new(poly: MultiPoly<E>, deg: (u32, u32)) -> Self {
        assert_eq!(poly.nvars(), 2);
        assert!(poly.degree_in(0).unwrap_or(0) <= deg.0 && poly.degree_in(1).unwrap_or(0) <= deg.1);
        BiForm { poly, deg }
    }

    /// The form in the chart `z -> 1/z` (variable `v = 0`) or `w -> 1/w` (`v = 1`).
    pub fn reversed<F: Field<Elem = E>>(&self, v: usize, f: &F) -> Self {
        let d = if v == 0 { self.deg.0 } else { self.deg.1 };
        BiForm { poly: reverse_var(&self.poly, v, d, f), deg: self.deg }
    }
}

pub fn reverse_var<E: Clone + Eq, F: Field<Elem = E>>(p: &MultiPoly<E>, v: usize, d: u32, f: &F) -> MultiPoly<E> {
    let terms = p.terms().map(|(e, c)| {
        let mut e = e.clone();
        e[v] = d - e[v];
        (e, c.clone())
    });
    MultiPoly::from_terms(p.nvars(), terms, f)
}

struct FiberPoint<E> {
    level: u32,
    z: Param<E>,
    multiplicity: u64,
}

fn univariate_in_z<F: Field>(p: &MultiPoly<F::Elem>, w0: &F::Elem, f: &F) -> UniPoly<F::Elem> {
    p.specialize(1, w0, f).to_univariate(0, f).expect("only z remains")
}

/// Points on the fiber `w = w0` (all data at level `lw`).
#[allow(clippy::too_many_arguments)]
fn fiber<G: Ground>(
    g: &G,
    lw: u32,
    p: (&MultiPoly<El<G>>, &MultiPoly<El<G>>),
    zrev: Option<(&MultiPoly<El<G>>, &MultiPoly<El<G>>, u32, u32)>,
    w0: &El<G>,
    max_level: u32,
    unsplit: &mut usize,
) -> Result<Vec<FiberPoint<El<G>>>> {
    let f = field(g, lw)?;
    let u1 = univariate_in_z(p.0, w0, &f);
    let u2 = univariate_in_z(p.1, w0, &f);
    let gcd = u1.gcd(&u2, &f);
    let mut out = Vec::new();
    if gcd.is_zero() {
        return Err(GeomError::Consistency("both equations vanish on a fiber".into()));
    }
    if gcd.degree().unwrap() > 0 {
        let rs = g.roots(&gcd, lw, max_level.max(lw))?;
        *unsplit += rs.unsplit_degree();
        for r in rs.roots {
            let lvl = g.join(r.level, lw);
            let fl = field(g, lvl)?;
            let z0 = g.embed(&r.value, r.level, lvl)?;
            let w = g.embed(w0, lw, lvl)?;
            let q1 = embed_mpoly(g, p.0, lw, lvl)?;
            let q2 = embed_mpoly(g, p.1, lw, lvl)?;
            let m = intersection_multiplicity_at(&q1, &q2, &[z0.clone(), w], &fl)
                .ok_or_else(|| GeomError::Consistency("common component through a fiber point".into()))?;
            out.push(FiberPoint { level: lvl, z: Param::Finite(z0), multiplicity: m });
        }
    }
    if let Some((r1, r2, a1, a2)) = zrev {
        let below = |u: &UniPoly<El<G>>, a: u32| u.degree().is_none_or(|d| (d as u32) < a);
        if below(&u1, a1) && below(&u2, a2) {
            let zero = f.zero();
            let m = intersection_multiplicity_at(r1, r2, &[zero, w0.clone()], &f)
                .ok_or_else(|| GeomError::Consistency("common component at infinity".into()))?;
            out.push(FiberPoint { level: lw, z: Param::Infinity, multiplicity: m });
        }
    }
    Ok(out)
}

struct System<'a, E> {
    p1: &'a MultiPoly<E>,
    p2: &'a MultiPoly<E>,
    /// z-reversed equations and formal z-degrees, when `z = infinity` is a point.
    zrev: Option<(MultiPoly<E>, MultiPoly<E>, u32, u32)>,
}

fn solve_over_roots<G: Ground>(
    g: &G,
    level: u32,
    sys: &System<'_, El<G>>,
    r: &UniPoly<El<G>>,
    w_of: impl Fn(&El<G>) -> Param<El<G>>,
    check: bool,
    max_level: u32,
    out: &mut Solved<El<G>>,
) -> Result<()> {
    if r.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let roots = g.roots(r, level, max_level.max(level))?;
    out.unsplit_degree += roots.unsplit_degree();
    for root in roots.roots {
        let lw = g.join(root.level, level);
        let w0 = g.embed(&root.value, root.level, lw)?;
        let p1 = embed_mpoly(g, sys.p1, level, lw)?;
        let p2 = embed_mpoly(g, sys.p2, level, lw)?;
        let zr = match &sys.zrev {
            Some((a, b, d1, d2)) => Some((embed_mpoly(g, a, level, lw)?, embed_mpoly(g, b, level, lw)?, *d1, *d2)),
            None => None,
        };
        let mut fiber_unsplit = 0usize;
        let pts = fiber(
            g,
            lw,
            (&p1, &p2),
            zr.as_ref().map(|(a, b, d1, d2)| (a, b, *d1, *d2)),
            &w0,
            max_level,
            &mut fiber_unsplit,
        )?;
        let total: u64 = pts.iter().map(|p| p.multiplicity).sum();
        if check && fiber_unsplit == 0 && total != root.multiplicity as u64 {
            return Err(GeomError::Consistency(format!(
                "fiber multiplicity {total} differs from resultant multiplicity {}",
                root.multiplicity
            )));
        }
        out.unsplit_degree += fiber_unsplit;
        for p in pts {
            let w = g.embed(&w0, lw, p.level)?;
            out.solutions.push(canonical(g, p.level, p.z, w_of(&w), p.multiplicity));
        }
    }
    Ok(())
}

fn canonical<G: Ground>(g: &G, level: u32, z: Param<El<G>>, w: Param<El<G>>, m: u64) -> Solution<El<G>> {
    let lv = |p: &Param<El<G>>| p.finite().map_or(1, |x| g.min_level(x, level));
    let target = g.join(lv(&z), lv(&w));
    let down = |p: Param<El<G>>| match p {
        Param::Finite(x) => Param::Finite(g.descend(&x, level, target).expect("descends")),
        Param::Infinity => Param::Infinity,
    };
    Solution { level: target, z: down(z), w: down(w), multiplicity: m }
}

fn finish<E: Ord>(mut s: Solved<E>) -> Solve<E> {
    s.solutions.sort();
    Solve::Finite(s)
}

/// Solves two bihomogeneous forms on `P^1 x P^1`, counting points at infinity.
pub fn solve_p1p1<G: Ground>(
    g: &G,
    level: u32,
    f1: &BiForm<El<G>>,
    f2: &BiForm<El<G>>,
    max_level: u32,
) -> Result<Solve<El<G>>> {
    let f = field(g, level)?;
    let (a1, b1) = f1.deg;
    let (a2, b2) = f2.deg;
    let res = resultant_in(&f1.poly, a1 as usize, &f2.poly, a2 as usize, 0, &f);
    if res.is_zero() {
        return Ok(Solve::PositiveDimensional);
    }
    let r = res.to_univariate(1, &f).expect("z eliminated");
    let formal = (a1 * b2 + a2 * b1) as usize;
    let deg = r.degree().unwrap();
    if deg > formal {
        return Err(GeomError::Consistency("resultant degree exceeds the formal degree".into()));
    }
    let mut out = Solved { solutions: Vec::new(), unsplit_degree: 0 };
    let z1 = f1.reversed(0, &f);
    let z2 = f2.reversed(0, &f);
    let sys = System { p1: &f1.poly, p2: &f2.poly, zrev: Some((z1.poly.clone(), z2.poly.clone(), a1, a2)) };
    solve_over_roots(g, level, &sys, &r, |w| Param::Finite(w.clone()), true, max_level, &mut out)?;
    let at_inf = formal - deg;
    if at_inf > 0 {
        let w1 = f1.reversed(1, &f);
        let w2 = f2.reversed(1, &f);
        let zw1 = w1.reversed(0, &f);
        let zw2 = w2.reversed(0, &f);
        let sys = System { p1: &w1.poly, p2: &w2.poly, zrev: Some((zw1.poly, zw2.poly, a1, a2)) };
        // w' = 1/w has a root of multiplicity `at_inf` at 0
        let x = UniPoly::monomial(f.one(), at_inf, &f);
        solve_over_roots(g, level, &sys, &x, |_| Param::Infinity, true, max_level, &mut out)?;
    }
    Ok(finish(out))
}

/// Solves two polynomials on the affine plane (finite points only).
pub fn solve_affine2<G: Ground>(
    g: &G,
    level: u32,
    p1: &MultiPoly<El<G>>,
    p2: &MultiPoly<El<G>>,
    max_level: u32,
) -> Result<Solve<El<G>>> {
    let f = field(g, level)?;
    if p1.is_zero() || p2.is_zero() {
        return Ok(Solve::PositiveDimensional);
    }
    let mut out = Solved { solutions: Vec::new(), unsplit_degree: 0 };
    let d1 = p1.degree_in(0).unwrap_or(0) as usize;
    let d2 = p2.degree_in(0).unwrap_or(0) as usize;
    if d1 + d2 == 0 {
        // both depend on w only
        let u1 = p1.to_univariate(1, &f).unwrap();
        let u2 = p2.to_univariate(1, &f).unwrap();
        let gcd = u1.gcd(&u2, &f);
        return if gcd.degree().unwrap() > 0 { Ok(Solve::PositiveDimensional) } else { Ok(finish(out)) };
    }
    let res = resultant_in(p1, d1, p2, d2, 0, &f);
    if res.is_zero() {
        return Ok(Solve::PositiveDimensional);
    }
    let r = res.to_univariate(1, &f).expect("z eliminated");
    let sys = System { p1, p2, zrev: None };
    solve_over_roots(g, level, &sys, &r, |w| Param::Finite(w.clone()), false, max_level, &mut out)?;
    Ok(finish(out))
}

/// Solves a ternary form system `h1 = h2 = 0` in `P^2` whose curves avoid
/// `(0:0:1)`; solutions are returned as projective points `(u0:u1:u2)`.
pub fn solve_p2<G: Ground>(
    g: &G,
    level: u32,
    h1: &MultiPoly<El<G>>,
    h2: &MultiPoly<El<G>>,
    max_level: u32,
) -> Result<Solve<P2Point<El<G>>>> {
    let f = field(g, level)?;
    let d1 = h1.homogeneous_degree().unwrap_or(0);
    let d2 = h2.homogeneous_degree().unwrap_or(0);
    if f.is_zero(&h1.coeff(&[0, 0, d1], &f)) || f.is_zero(&h2.coeff(&[0, 0, d2], &f)) {
        return Err(GeomError::Precondition("the projection centre lies on a curve".into()));
    }
    // chart u1 = 1: (z, w) = (u2, u0); chart u0 = 1 for the fiber u1 = 0: (z, w) = (u2, u1)
    let chart = |h: &MultiPoly<El<G>>, keep: usize| {
        let one = f.one();
        let drop = 1 - keep;
        let s = h.specialize(drop, &one, &f);
        let terms: Vec<(Vec<u32>, El<G>)> = s.terms().map(|(x, c)| (vec![x[2], x[keep]], c.clone())).collect();
        MultiPoly::from_terms(2, terms, &f)
    };
    let (c1, c2) = (chart(h1, 0), chart(h2, 0));
    let res = resultant_in(&c1, d1 as usize, &c2, d2 as usize, 0, &f);
    if res.is_zero() {
        return Ok(Solve::PositiveDimensional);
    }
    let r = res.to_univariate(1, &f).expect("z eliminated");
    let formal = (d1 * d2) as usize;
    let mut raw = Solved { solutions: Vec::new(), unsplit_degree: 0 };
    let sys = System { p1: &c1, p2: &c2, zrev: None };
    solve_over_roots(g, level, &sys, &r, |w| Param::Finite(w.clone()), true, max_level, &mut raw)?;
    let mut out: Vec<Solution<P2Point<El<G>>>> = Vec::new();
    for s in raw.solutions.drain(..) {
        let (Param::Finite(u2), Param::Finite(u0)) = (s.z, s.w) else { unreachable!() };
        let fl = field(g, s.level)?;
        out.push(Solution { level: s.level, z: Param::Finite(P2Point([u0, fl.one(), u2])), w: Param::Infinity, multiplicity: s.multiplicity });
    }
    let at_inf = formal - r.degree().unwrap();
    if at_inf > 0 {
        let (i1, i2) = (chart(h1, 1), chart(h2, 1));
        let sys = System { p1: &i1, p2: &i2, zrev: None };
        let x = UniPoly::monomial(f.one(), at_inf, &f);
        let mut inf = Solved { solutions: Vec::new(), unsplit_degree: 0 };
        solve_over_roots(g, level, &sys, &x, |w| Param::Finite(w.clone()), true, max_level, &mut inf)?;
        for s in inf.solutions {
            let (Param::Finite(u2), Param::Finite(u1)) = (s.z, s.w) else { unreachable!() };
            let fl = field(g, s.level)?;
            out.push(Solution { level: s.level, z: Param::Finite(P2Point([fl.one(), u1, u2])), w: Param::Infinity, multiplicity: s.multiplicity });
        }
        raw.unsplit_degree += inf.unsplit_degree;
    }
    out.sort();
    Ok(Solve::Finite(Solved { solutions: out, unsplit_degree: raw.unsplit_degree }))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P2Point<E>(pub [E; 3]);
