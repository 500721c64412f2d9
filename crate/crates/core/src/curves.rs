//! Parameterized rational curves on the cubic.

use exactalg::linalg::rank;
use exactalg::{Field, Ground, MultiPoly, UniPoly};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubic::{CubicForm, SectionKind};
use crate::error::{GeomError, Result};
use crate::solve::{solve_p1p1, BiForm, Param, Solve};
use crate::space::{embed_upoly, embed_vec, field, point, El, Plane, Point, ProjLine};

/// `s -> (phi_0(s) : .. : phi_n(s))`, each coordinate a binary form of degree
/// `e` stored as a polynomial in `z = s0/s1` (coefficient `i` belongs to
/// `s0^i s1^(e-i)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve<E> {
    pub level: u32,
    pub e: u32,
    pub coords: Vec<UniPoly<E>>,
}

impl<E: Clone + Eq> RationalCurve<E> {
    pub fn new<F: Field<Elem = E>>(level: u32, e: u32, coords: Vec<UniPoly<E>>, _f: &F) -> Result<Self> {
        if e == 0 || coords.len() < 2 {
            return Err(GeomError::Invalid("a curve needs degree >= 1 and at least two coordinates".into()));
        }
        if coords.iter().any(|c| c.degree().is_some_and(|d| d as u32 > e)) {
            return Err(GeomError::Invalid("a coordinate exceeds the curve degree".into()));
        }
        Ok(RationalCurve { level, e, coords })
    }

    pub fn from_integer_coords<G: Ground<F = F>, F: Field<Elem = E>>(g: &G, e: u32, coords: &[Vec<BigInt>]) -> Result<Self> {
        let f = field(g, 1)?;
        let polys = coords
            .iter()
            .map(|c| {
                if c.len() != e as usize + 1 {
                    return Err(GeomError::Invalid(format!("each coordinate needs {} coefficients", e + 1)));
                }
                Ok(UniPoly::from_coeffs(c.iter().map(|x| f.from_bigint(x)).collect(), &f))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(1, e, polys, &f)
    }

    /// The line `s0 a + s1 b`.
    pub fn from_line<G: Ground<F = F>, F: Field<Elem = E>>(g: &G, l: &ProjLine<E>) -> Result<Self> {
        let f = field(g, l.level)?;
        let coords = (0..l.rows[0].len())
            .map(|j| UniPoly::from_coeffs(vec![l.rows[1][j].clone(), l.rows[0][j].clone()], &f))
            .collect();
        Self::new(l.level, 1, coords, &f)
    }

    /// `phi((m0 z + m1) / (m2 z + m3))`, homogenized.
    pub fn reparametrize<F: Field<Elem = E>>(&self, m: &[E; 4], f: &F) -> Self {
        let num = UniPoly::from_coeffs(vec![m[1].clone(), m[0].clone()], f);
        let den = UniPoly::from_coeffs(vec![m[3].clone(), m[2].clone()], f);
        let e = self.e as u64;
        let coords = self
            .coords
            .iter()
            .map(|p| {
                (0..=self.e as usize).fold(UniPoly::zero(), |acc, i| {
                    let term = num.pow(i as u64, f).mul(&den.pow(e - i as u64, f), f).scale(&p.coeff(i, f), f);
                    acc.add(&term, f)
                })
            })
            .collect();
        RationalCurve { level: self.level, e: self.e, coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Coefficient lists, padded to length `e + 1`.
    pub fn coefficient_rows<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        self.coords.iter().map(|c| (0..=self.e as usize).map(|i| c.coeff(i, f)).collect()).collect()
    }

    pub fn at_level<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, level: u32) -> Result<Self> {
        let coords = self.coords.iter().map(|c| embed_upoly(g, c, self.level, level)).collect::<Result<_>>()?;
        Ok(RationalCurve { level, e: self.e, coords })
    }

    /// `phi` at a parameter; the parameter lives at `level`, a multiple of the curve level.
    pub fn eval<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, level: u32, s: &Param<E>) -> Result<Vec<E>> {
        let c = self.at_level(g, level)?;
        let f = field(g, level)?;
        Ok(match s {
            Param::Finite(z) => c.coords.iter().map(|p| p.eval(z, &f)).collect(),
            Param::Infinity => c.coords.iter().map(|p| p.coeff(self.e as usize, &f)).collect(),
        })
    }

    /// The two partial derivatives of the homogeneous parameterization.
    pub fn partials<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, level: u32, s: &Param<E>) -> Result<[Vec<E>; 2]> {
        let c = self.at_level(g, level)?;
        let f = field(g, level)?;
        let e = self.e as usize;
        let mut d0 = Vec::new();
        let mut d1 = Vec::new();
        for p in &c.coords {
            match s {
                Param::Finite(z) => {
                    let mut a = f.zero();
                    let mut b = f.zero();
                    let mut zp = f.one();
                    for i in 0..=e {
                        let ci = p.coeff(i, &f);
                        b = f.add(&b, &f.mul(&f.from_i64((e - i) as i64), &f.mul(&ci, &zp)));
                        if i < e {
                            let cn = p.coeff(i + 1, &f);
                            a = f.add(&a, &f.mul(&f.from_i64((i + 1) as i64), &f.mul(&cn, &zp)));
                        }
                        zp = f.mul(&zp, z);
                    }
                    d0.push(a);
                    d1.push(b);
                }
                Param::Infinity => {
                    d0.push(f.mul(&f.from_i64(e as i64), &p.coeff(e, &f)));
                    d1.push(if e >= 1 { p.coeff(e - 1, &f) } else { f.zero() });
                }
            }
        }
        Ok([d0, d1])
    }

    /// Coordinate `j` as a polynomial in variable `var` of a two-variable ring.
    pub fn coord_in<F: Field<Elem = E>>(&self, j: usize, var: usize, f: &F) -> MultiPoly<E> {
        MultiPoly::from_univariate(&self.coords[j], 2, var, f)
    }
}

/// `F(phi(z))` as a polynomial in `z`.
pub fn compose<G: Ground>(x: &CubicForm<G>, c: &RationalCurve<El<G>>) -> Result<UniPoly<El<G>>> {
    let f = field(x.ground(), c.level)?;
    let lf = x.at(c.level)?;
    let subs: Vec<MultiPoly<El<G>>> = c.coords.iter().map(|p| MultiPoly::from_univariate(p, 1, 0, &f)).collect();
    Ok(lf.f.substitute(&subs, &f).to_univariate(0, &f).unwrap_or_else(UniPoly::zero))
}

/// Pair of parameters with equal image, or a parameter where the image is singular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node<E> {
    pub level: u32,
    pub s: Param<E>,
    pub t: Param<E>,
    pub point: Point<E>,
    /// `s = t`: the differential of the parameterization drops rank.
    pub cusp: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveValidation<E> {
    pub degree: u32,
    pub on_x: bool,
    pub base_point_free: bool,
    pub birational: bool,
    pub nodes: Vec<Node<E>>,
    /// The curve is smooth and birational onto its image.
    pub smooth: bool,
    /// Transversality to the branch divisor is never checked.
    pub transversality_unchecked: bool,
}

fn has_base_point<F: Field>(c: &RationalCurve<F::Elem>, f: &F) -> bool {
    let at_inf = c.coords.iter().all(|p| p.degree().is_none_or(|d| (d as u32) < c.e));
    let g = c.coords.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p, f));
    at_inf || g.degree().is_none_or(|d| d > 0)
}

fn random_combination<F: Field>(polys: &[MultiPoly<F::Elem>], f: &F, rng: &mut ChaCha8Rng) -> MultiPoly<F::Elem> {
    polys
        .iter()
        .fold(MultiPoly::zero(2), |acc, p| acc.add(&p.scale(&f.random_elem(rng), f), f))
}

/// `phi_i(z) psi_j(w) - phi_j(z) psi_i(w)` for `i < j`.
fn cross_minors<F: Field>(a: &RationalCurve<F::Elem>, b: &RationalCurve<F::Elem>, f: &F) -> Vec<MultiPoly<F::Elem>> {
    let mut out = Vec::new();
    for i in 0..a.coords.len() {
        for j in i + 1..a.coords.len() {
            let m = a
                .coord_in(i, 0, f)
                .mul(&b.coord_in(j, 1, f), f)
                .sub(&a.coord_in(j, 0, f).mul(&b.coord_in(i, 1, f), f), f);
            out.push(m);
        }
    }
    out
}

fn all_vanish<G: Ground>(g: &G, polys: &[MultiPoly<El<G>>], from: u32, level: u32, z: &Param<El<G>>, w: &Param<El<G>>, deg: (u32, u32)) -> Result<bool> {
    let f = field(g, level)?;
    for p in polys {
        let mut q = crate::space::embed_mpoly(g, p, from, level)?;
        let mut pt = [f.zero(), f.zero()];
        for (v, (param, d)) in [(z, deg.0), (w, deg.1)].into_iter().enumerate() {
            match param {
                Param::Finite(x) => pt[v] = x.clone(),
                Param::Infinity => q = crate::solve::reverse_var(&q, v, d, &f),
            }
        }
        if !f.is_zero(&q.eval(&pt, &f)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves two random combinations of `polys`; over small fields a draw can
/// share a spurious fiber, so draws are repeated, and the solution set is
/// declared positive-dimensional only if every draw finds it so.
#[allow(clippy::type_complexity)]
fn solve_combinations<G: Ground>(
    g: &G,
    level: u32,
    polys: &[MultiPoly<El<G>>],
    deg: (u32, u32),
    rng: &mut ChaCha8Rng,
) -> Result<(Solve<El<G>>, BiForm<El<G>>, BiForm<El<G>>)> {
    let f = field(g, level)?;
    let mut last = None;
    for _ in 0..24 {
        let h1 = BiForm::new(random_combination(polys, &f, rng), deg);
        let h2 = BiForm::new(random_combination(polys, &f, rng), deg);
        match solve_p1p1(g, level, &h1, &h2, g.budget().max(level)) {
            Ok(Solve::Finite(s)) => return Ok((Solve::Finite(s), h1, h2)),
            Ok(Solve::PositiveDimensional) => last = Some(Ok((Solve::PositiveDimensional, h1, h2))),
            Err(GeomError::Consistency(m)) => {
                if last.is_none() {
                    last = Some(Err(GeomError::Consistency(m)));
                }
            }
            Err(e) => return Err(e),
        }
    }
    last.expect("at least one draw")
}

/// Degree of common solutions of three random combinations that did not
/// split: roots of the gcd of two resultants that stay outside the tower.
#[allow(clippy::too_many_arguments)]
fn common_unsplit<G: Ground>(
    g: &G,
    level: u32,
    h1: &MultiPoly<El<G>>,
    h2: &MultiPoly<El<G>>,
    h3: &MultiPoly<El<G>>,
    a: u32,
    fallback: usize,
) -> Result<usize> {
    if fallback == 0 {
        return Ok(0);
    }
    let f = field(g, level)?;
    let r12 = exactalg::resultant::resultant_in(h1, a as usize, h2, a as usize, 0, &f);
    let r13 = exactalg::resultant::resultant_in(h1, a as usize, h3, a as usize, 0, &f);
    if r12.is_zero() || r13.is_zero() {
        return Ok(fallback);
    }
    let u12 = r12.to_univariate(1, &f).unwrap();
    let u13 = r13.to_univariate(1, &f).unwrap();
    let gcd = u12.gcd(&u13, &f);
    if gcd.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    Ok(g.roots(&gcd, level, g.budget().max(level))?.unsplit_degree().min(fallback))
}

/// Checks that the curve is base-point free, lies on the cubic and maps
/// birationally onto a smooth image.
pub fn validate_curve<G: Ground>(x: &CubicForm<G>, c: &RationalCurve<El<G>>, seed: u64) -> Result<CurveValidation<El<G>>> {
    let g = x.ground();
    let f = field(g, c.level)?;
    if c.n() != x.n() {
        return Err(GeomError::Invalid("curve and cubic live in different spaces".into()));
    }
    if has_base_point(c, &f) {
        return Err(GeomError::BasePoint);
    }
    if !compose(x, c)?.is_zero() {
        return Err(GeomError::NotOnX);
    }
    let mut v = CurveValidation {
        degree: c.e,
        on_x: true,
        base_point_free: true,
        birational: true,
        nodes: Vec::new(),
        smooth: true,
        transversality_unchecked: true,
    };
    if c.e == 1 {
        return Ok(v);
    }
    let diag = MultiPoly::var(2, 0, &f).sub(&MultiPoly::var(2, 1, &f), &f);
    let reduced: Vec<MultiPoly<El<G>>> = cross_minors(c, c, &f)
        .iter()
        .map(|m| m.div_exact(&diag, &f).ok_or_else(|| GeomError::Consistency("coincidence form not divisible by the diagonal".into())))
        .collect::<Result<_>>()?;
    let deg = (c.e - 1, c.e - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC0DE);
    let (solved, h1, h2) = solve_combinations(g, c.level, &reduced, deg, &mut rng)?;
    match solved {
        Solve::PositiveDimensional => {
            v.birational = false;
            v.smooth = false;
        }
        Solve::Finite(sol) => {
            for s in sol.solutions {
                if !all_vanish(g, &reduced, c.level, s.level, &s.z, &s.w, deg)? {
                    continue;
                }
                let cusp = s.z == s.w;
                if !cusp && s.z > s.w {
                    continue;
                }
                let lvl = g.join(s.level, c.level);
                let p = point(g, lvl, &c.eval(g, lvl, &s.z)?)?;
                v.nodes.push(Node { level: s.level, s: s.z, t: s.w, point: p, cusp });
            }
            let h3 = random_combination(&reduced, &f, &mut rng);
            let unsplit = common_unsplit(g, c.level, &h1.poly, &h2.poly, &h3, deg.0, sol.unsplit_degree)?;
            v.smooth = v.nodes.is_empty() && unsplit == 0;
        }
    }
    Ok(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetingPoint<E> {
    pub point: Point<E>,
    /// Parameter pairs `(s, t)` with `phi1(s) = phi2(t)` at this point, with their level.
    pub preimages: Vec<(u32, Param<E>, Param<E>)>,
    /// Both curves are smooth here and their tangent lines differ.
    pub transversal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetingData<E> {
    pub points: Vec<MeetingPoint<E>>,
    pub unsplit_degree: usize,
}

impl<E> MeetingData<E> {
    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn all_transversal(&self) -> bool {
        self.points.iter().all(|p| p.transversal)
    }
}

/// Common points of two curves, eliminating between the parameterizations.
pub fn curve_meeting_data<G: Ground>(g: &G, a: &RationalCurve<El<G>>, b: &RationalCurve<El<G>>, seed: u64) -> Result<MeetingData<El<G>>> {
    if a.n() != b.n() {
        return Err(GeomError::Invalid("curves live in different spaces".into()));
    }
    let lvl = g.join(a.level, b.level);
    let f = field(g, lvl)?;
    let (a, b) = (a.at_level(g, lvl)?, b.at_level(g, lvl)?);
    let minors = cross_minors(&a, &b, &f);
    let deg = (a.e, b.e);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x3EE7);
    let (solved, h1, h2) = solve_combinations(g, lvl, &minors, deg, &mut rng)?;
    let sol = match solved {
        Solve::PositiveDimensional => return Err(GeomError::EqualImages),
        Solve::Finite(s) => s,
    };
    let mut points: Vec<MeetingPoint<El<G>>> = Vec::new();
    for s in sol.solutions {
        if !all_vanish(g, &minors, lvl, s.level, &s.z, &s.w, deg)? {
            continue;
        }
        let l = g.join(s.level, lvl);
        let p = point(g, l, &a.eval(g, l, &s.z)?)?;
        let fl = field(g, l)?;
        let [a0, a1] = a.partials(g, l, &s.z)?;
        let [b0, b1] = b.partials(g, l, &s.w)?;
        let smooth_a = rank(&vec![a0.clone(), a1.clone()], &fl) == 2;
        let smooth_b = rank(&vec![b0.clone(), b1.clone()], &fl) == 2;
        let transversal = smooth_a && smooth_b && rank(&vec![a0, a1, b0, b1], &fl) == 3;
        match points.iter_mut().find(|m| m.point == p) {
            Some(m) => {
                m.preimages.push((s.level, s.z, s.w));
                m.transversal = false;
            }
            None => points.push(MeetingPoint { point: p, preimages: vec![(s.level, s.z, s.w)], transversal }),
        }
    }
    points.sort_by(|x, y| x.point.cmp(&y.point));
    let h3 = random_combination(&minors, &f, &mut rng);
    let unsplit = common_unsplit(g, lvl, &h1.poly, &h2.poly, &h3, deg.0, sol.unsplit_degree)?;
    Ok(MeetingData { points, unsplit_degree: unsplit })
}

/// The 2-plane spanned by a line and one more vector.
pub fn plane_through<G: Ground>(g: &G, l: &ProjLine<El<G>>, level: u32, v: &[El<G>]) -> Result<Plane<El<G>>> {
    let lvl = g.join(level, l.level);
    let mut rows = l.basis_at(g, lvl)?;
    rows.push(embed_vec(g, v, level, lvl)?);
    crate::space::span(g, lvl, &rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConicResidual<E> {
    Curve(RationalCurve<E>),
    Degenerate(SectionKind),
    /// The residual conic is smooth but no point was found within the search.
    NoPoint,
}

fn quad_eval<F: Field>(q: &MultiPoly<F::Elem>, v: &[F::Elem], f: &F) -> F::Elem {
    q.eval(v, f)
}

/// Points of `P^2` over the given level, or a box of small rationals.
fn find_conic_point<G: Ground>(g: &G, level: u32, q: &MultiPoly<El<G>>) -> Result<Option<(u32, Vec<El<G>>)>> {
    let mut levels = vec![level];
    if g.budget() >= 2 * level {
        levels.push(2 * level);
    }
    for lvl in levels {
        let f = field(g, lvl)?;
        let ql = crate::space::embed_mpoly(g, q, level, lvl)?;
        match f.order() {
            Some(order) => {
                if (order as u128).pow(2) <= 4_000_000 {
                    if let Some(v) = search_points(&ql, &f, |k| f.element(k as u64), order as usize) {
                        return Ok(Some((lvl, v)));
                    }
                }
            }
            None => {
                let h = 12i64;
                let vals: Vec<El<G>> = (-h..=h).map(|i| f.from_i64(i)).collect();
                if let Some(v) = search_points(&ql, &f, |k| vals.get(k).cloned(), vals.len()) {
                    return Ok(Some((lvl, v)));
                }
                return Ok(None);
            }
        }
    }
    Ok(None)
}

fn search_points<F: Field>(q: &MultiPoly<F::Elem>, f: &F, elem: impl Fn(usize) -> Option<F::Elem>, count: usize) -> Option<Vec<F::Elem>> {
    let cands = (0..count).filter_map(&elem).collect::<Vec<_>>();
    let try_v = |v: Vec<F::Elem>| f.is_zero(&quad_eval(q, &v, f)).then_some(v);
    if let Some(v) = try_v(vec![f.one(), f.zero(), f.zero()]) {
        return Some(v);
    }
    for a in &cands {
        if let Some(v) = try_v(vec![a.clone(), f.one(), f.zero()]) {
            return Some(v);
        }
    }
    for a in &cands {
        for b in &cands {
            if let Some(v) = try_v(vec![a.clone(), b.clone(), f.one()]) {
                return Some(v);
            }
        }
    }
    None
}

/// The conic residual to `l` in a plane through it, parameterized by
/// projection from a point when it is smooth.
pub fn conic_residual_to_line<G: Ground>(x: &CubicForm<G>, l: &ProjLine<El<G>>, plane: &Plane<El<G>>, seed: u64) -> Result<ConicResidual<El<G>>> {
    let g = x.ground();
    if !x.contains_line(l)? {
        return Err(GeomError::Precondition("the line is not on the cubic".into()));
    }
    let sec = x.plane_residual(plane, Some(l), seed)?;
    if sec.kind == SectionKind::ContainedInX {
        return Err(GeomError::Precondition("the plane lies on the cubic".into()));
    }
    if sec.kind != SectionKind::LineAndConic || sec.unresolved {
        return Ok(ConicResidual::Degenerate(sec.kind));
    }
    let lvl0 = g.join(l.level, plane.level);
    let q = sec
        .components
        .iter()
        .find_map(|(c, _)| match c {
            crate::cubic::Component::Conic(q) => Some(q.clone()),
            _ => None,
        })
        .expect("conic component");
    let Some((lvl, p0)) = find_conic_point(g, lvl0, &q)? else {
        return Ok(ConicResidual::NoPoint);
    };
    let f = field(g, lvl)?;
    let q = crate::space::embed_mpoly(g, &q, lvl0, lvl)?;
    let basis = plane.basis_at(g, lvl)?;
    let comp = exactalg::linalg::complement(std::slice::from_ref(&p0), 3, &f);
    let (d1, d2) = (&comp[0], &comp[1]);
    // v(z) = z d1 + d2; image Q(v) p0 - Q1(p0; v) v
    let lin = |j: usize| UniPoly::from_coeffs(vec![d2[j].clone(), d1[j].clone()], &f);
    let vz: Vec<UniPoly<El<G>>> = (0..3).map(lin).collect();
    let subs: Vec<MultiPoly<El<G>>> = vz.iter().map(|p| MultiPoly::from_univariate(p, 1, 0, &f)).collect();
    let qv = q.substitute(&subs, &f).to_univariate(0, &f).unwrap_or_else(UniPoly::zero);
    let shifted: Vec<MultiPoly<El<G>>> = (0..3)
        .map(|j| subs[j].add(&MultiPoly::constant(1, p0[j].clone(), &f), &f))
        .collect();
    let qs = q.substitute(&shifted, &f).to_univariate(0, &f).unwrap_or_else(UniPoly::zero);
    let qp = UniPoly::constant(q.eval(&p0, &f), &f);
    let polar = qs.sub(&qv, &f).sub(&qp, &f);
    let plane_coords: Vec<UniPoly<El<G>>> = (0..3)
        .map(|j| qv.scale(&p0[j], &f).sub(&polar.mul(&vz[j], &f), &f))
        .collect();
    let coords: Vec<UniPoly<El<G>>> = (0..basis[0].len())
        .map(|k| {
            (0..3).fold(UniPoly::zero(), |acc, j| acc.add(&plane_coords[j].scale(&basis[j][k], &f), &f))
        })
        .collect();
    let curve = RationalCurve::new(lvl, 2, coords, &f)?;
    if has_base_point(&curve, &f) || !compose(x, &curve)?.is_zero() {
        return Err(GeomError::Consistency("conic parameterization failed".into()));
    }
    Ok(ConicResidual::Curve(curve))
}
