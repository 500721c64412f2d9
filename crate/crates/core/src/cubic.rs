//! Cubic forms, their polar forms, and the basic tests built on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use exactalg::linalg::{kernel, rank};
use exactalg::{Field, FieldTower, Ground, MultiPoly};
use rand::Rng;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GeomError, Result};
use crate::space::{total, embed_mpoly, embed_vec, field, point, span, El, Plane, Point, ProjLine};

/// The cubic and its gradient embedded at one level.
#[derive(Clone, Debug)]
pub struct LevelForms<E> {
    pub level: u32,
    pub f: MultiPoly<E>,
    pub grad: Vec<MultiPoly<E>>,
}

/// A cubic form `F` in `n+1` variables with coefficients at level 1.
pub struct CubicForm<G: Ground> {
    ground: G,
    n: usize,
    form: MultiPoly<El<G>>,
    cache: Mutex<HashMap<u32, Arc<LevelForms<El<G>>>>>,
}

impl<G: Ground> Clone for CubicForm<G> {
    fn clone(&self) -> Self {
        CubicForm { ground: self.ground.clone(), n: self.n, form: self.form.clone(), cache: Mutex::new(HashMap::new()) }
    }
}

impl<G: Ground> std::fmt::Debug for CubicForm<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CubicForm(n={}, {:?})", self.n, self.form)
    }
}

impl<G: Ground> CubicForm<G> {
    /// Rejects forms that are not cubic, and forms all of whose partial
    /// derivatives vanish identically (singular everywhere, as the Fermat
    /// cubic in characteristic 3).
    pub fn new(ground: G, n: usize, form: MultiPoly<El<G>>) -> Result<Self> {
        if n < 2 || form.nvars() != n + 1 {
            return Err(GeomError::Invalid(format!("expected a form in {} variables", n + 1)));
        }
        if form.is_zero() || !form.is_homogeneous() || form.total_degree() != Some(3) {
            return Err(GeomError::NotCubic);
        }
        let f = field(&ground, 1)?;
        if form.gradient(&f).iter().all(|d| d.is_zero()) {
            return Err(GeomError::Singular("every partial derivative vanishes identically".into()));
        }
        Ok(CubicForm { ground, n, form, cache: Mutex::new(HashMap::new()) })
    }

    pub fn from_integer_terms(ground: G, n: usize, terms: &[(Vec<u32>, BigInt)]) -> Result<Self> {
        let f = field(&ground, 1)?;
        if terms.iter().any(|(e, _)| e.len() != n + 1) {
            return Err(GeomError::Invalid("exponent vector of the wrong length".into()));
        }
        let poly = MultiPoly::from_terms(n + 1, terms.iter().map(|(e, c)| (e.clone(), f.from_bigint(c))), &f);
        Self::new(ground, n, poly)
    }

    /// `x_0^3 + .. + x_n^3`.
    pub fn fermat(ground: G, n: usize) -> Result<Self> {
        let terms: Vec<(Vec<u32>, BigInt)> = (0..=n)
            .map(|i| {
                let mut e = vec![0; n + 1];
                e[i] = 3;
                (e, BigInt::from(1))
            })
            .collect();
        Self::from_integer_terms(ground, n, &terms)
    }

    pub fn ground(&self) -> &G {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &MultiPoly<El<G>> {
        &self.form
    }

    /// In characteristic 3 the Euler relation gives no information and some
    /// smooth-looking forms are singular everywhere.
    pub fn char3_warning(&self) -> bool {
        self.ground.characteristic() == 3
    }

    pub fn at(&self, level: u32) -> Result<Arc<LevelForms<El<G>>>> {
        if let Some(l) = self.cache.lock().unwrap().get(&level) {
            return Ok(l.clone());
        }
        let f = field(&self.ground, level)?;
        let form = embed_mpoly(&self.ground, &self.form, 1, level)?;
        let grad = form.gradient(&f);
        let l = Arc::new(LevelForms { level, f: form, grad });
        self.cache.lock().unwrap().insert(level, l.clone());
        Ok(l)
    }

    pub fn eval(&self, level: u32, x: &[El<G>]) -> Result<El<G>> {
        let f = field(&self.ground, level)?;
        Ok(self.at(level)?.f.eval(x, &f))
    }

    pub fn gradient_at(&self, level: u32, x: &[El<G>]) -> Result<Vec<El<G>>> {
        let f = field(&self.ground, level)?;
        Ok(self.at(level)?.grad.iter().map(|d| d.eval(x, &f)).collect())
    }

    /// `F1(a; b) = grad F(a) . b`, the coefficient of `lambda` in `F(a + lambda b)`.
    pub fn polar1(&self, level: u32, a: &[El<G>], b: &[El<G>]) -> Result<El<G>> {
        let f = field(&self.ground, level)?;
        let g = self.gradient_at(level, a)?;
        Ok(total(&f, g.iter().zip(b).map(|(x, y)| f.mul(x, y))))
    }

    /// `F2(a; b) = F1(b; a)`, the coefficient of `lambda^2`.
    pub fn polar2(&self, level: u32, a: &[El<G>], b: &[El<G>]) -> Result<El<G>> {
        self.polar1(level, b, a)
    }

    /// `F1` and `F2` as forms in `x_0..x_n, y_0..y_n`, read off from the
    /// expansion of `F(x + lambda y)`.
    pub fn polar_forms(&self) -> Result<(MultiPoly<El<G>>, MultiPoly<El<G>>)> {
        let f = field(&self.ground, 1)?;
        let m = self.n + 1;
        let nv = 2 * m + 1;
        let lam = MultiPoly::var(nv, 2 * m, &f);
        let subs: Vec<_> = (0..m)
            .map(|i| MultiPoly::var(nv, i, &f).add(&lam.mul(&MultiPoly::var(nv, m + i, &f), &f), &f))
            .collect();
        let expanded = self.form.substitute(&subs, &f);
        let coeffs = expanded.coefficients_in(2 * m, &f);
        let targets: Vec<usize> = (0..nv).map(|i| i.min(2 * m - 1)).collect();
        let pick = |k: usize| coeffs.get(k).map_or(MultiPoly::zero(2 * m), |c| c.relabel(2 * m, &targets));
        Ok((pick(1), pick(2)))
    }

    pub fn contains_point(&self, p: &Point<El<G>>) -> Result<bool> {
        let f = field(&self.ground, p.level)?;
        Ok(f.is_zero(&self.eval(p.level, &p.coords)?))
    }

    pub fn is_singular_point(&self, p: &Point<El<G>>) -> Result<bool> {
        let f = field(&self.ground, p.level)?;
        Ok(self.contains_point(p)? && self.gradient_at(p.level, &p.coords)?.iter().all(|x| f.is_zero(x)))
    }

    /// A line through `a` and `b` lies on the cubic iff
    /// `F(a) = F(b) = F1(a;b) = F2(a;b) = 0`.
    pub fn contains_line_through(&self, level: u32, a: &[El<G>], b: &[El<G>]) -> Result<bool> {
        let f = field(&self.ground, level)?;
        Ok(f.is_zero(&self.eval(level, a)?)
            && f.is_zero(&self.eval(level, b)?)
            && f.is_zero(&self.polar1(level, a, b)?)
            && f.is_zero(&self.polar2(level, a, b)?))
    }

    pub fn contains_line(&self, l: &ProjLine<El<G>>) -> Result<bool> {
        self.contains_line_through(l.level, &l.rows[0], &l.rows[1])
    }

    /// `F(sum t_i v_i)` as a form in `t`.
    pub fn restrict(&self, level: u32, basis: &[Vec<El<G>>]) -> Result<MultiPoly<El<G>>> {
        let f = field(&self.ground, level)?;
        let k = basis.len();
        let subs: Vec<MultiPoly<El<G>>> = (0..=self.n)
            .map(|j| {
                MultiPoly::from_terms(
                    k,
                    (0..k).map(|i| {
                        let mut e = vec![0; k];
                        e[i] = 1;
                        (e, basis[i][j].clone())
                    }),
                    &f,
                )
            })
            .collect();
        Ok(self.at(level)?.f.substitute(&subs, &f))
    }

    fn require_smooth_point(&self, p: &Point<El<G>>) -> Result<()> {
        if !self.contains_point(p)? {
            return Err(GeomError::PointNotOnX);
        }
        if self.is_singular_point(p)? {
            return Err(GeomError::SingularPoint);
        }
        Ok(())
    }

    /// The lines of the cubic through a smooth point `x`, with multiplicities.
    ///
    /// Directions are points `y` of the tangent hyperplane modulo `x`; the
    /// line `xy` lies on the cubic iff `F2(x; y) = 0` and `F(y) = 0`. For a
    /// threefold this is a conic meeting a cubic in the plane of directions;
    /// for a surface it is a quadric and a cubic on a pencil.
    pub fn lines_through_point(&self, p: &Point<El<G>>, seed: u64) -> Result<LinesThroughPoint<El<G>>> {
        self.require_smooth_point(p)?;
        let g = &self.ground;
        let lv = p.level;
        let f = field(g, lv)?;
        let x = p.coords.clone();
        let grad = self.gradient_at(lv, &x)?;
        let tangent = kernel(&vec![grad], self.n + 1, &f);
        let mut current = vec![x.clone()];
        let mut dirs = Vec::new();
        for v in tangent {
            current.push(v.clone());
            if rank(&current, &f) == current.len() {
                dirs.push(v);
            } else {
                current.pop();
            }
        }
        let k = dirs.len();
        // quadric q(u) = F2(x; y(u)) = grad F(y(u)) . x and cubic c(u) = F(y(u))
        let c = self.restrict(lv, &dirs)?;
        let lf = self.at(lv)?;
        let ysubs: Vec<MultiPoly<El<G>>> = (0..=self.n)
            .map(|j| {
                MultiPoly::from_terms(
                    k,
                    (0..k).map(|i| {
                        let mut e = vec![0; k];
                        e[i] = 1;
                        (e, dirs[i][j].clone())
                    }),
                    &f,
                )
            })
            .collect();
        let mut q = MultiPoly::zero(k);
        for (j, d) in lf.grad.iter().enumerate() {
            q = q.add(&d.substitute(&ysubs, &f).scale(&x[j], &f), &f);
        }
        let direction = |u: &[El<G>], level: u32| -> Result<Vec<El<G>>> {
            let fl = field(g, level)?;
            let dl: Vec<Vec<El<G>>> = dirs.iter().map(|d| embed_vec(g, d, lv, level)).collect::<Result<_>>()?;
            Ok((0..=self.n)
                .map(|j| total(&fl, u.iter().zip(&dl).map(|(ui, d)| fl.mul(ui, &d[j]))))
                .collect())
        };
        let mut lines: Vec<(ProjLine<El<G>>, u64)> = Vec::new();
        let mut unsplit = 0usize;
        let budget = g.budget();
        match k {
            3 if q.is_zero() || c.is_zero() => {
                return Ok(LinesThroughPoint { point: p.clone(), eckardt: true, lines, unsplit_degree: 0 });
            }
            3 => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x11AE5);
                let mut attempt = 0;
                let (t, q2, c2) = loop {
                    attempt += 1;
                    if attempt > 200 {
                        return Err(GeomError::Precondition("no projection centre off both curves".into()));
                    }
                    let t: Vec<Vec<El<G>>> =
                        (0..3).map(|_| (0..3).map(|_| f.random_elem(&mut rng)).collect()).collect();
                    if rank(&t, &f) < 3 {
                        continue;
                    }
                    let lin: Vec<MultiPoly<El<G>>> = (0..3)
                        .map(|i| {
                            MultiPoly::from_terms(
                                3,
                                (0..3).map(|j| {
                                    let mut e = vec![0; 3];
                                    e[j] = 1;
                                    (e, t[i][j].clone())
                                }),
                                &f,
                            )
                        })
                        .collect();
                    let q2 = q.substitute(&lin, &f);
                    let c2 = c.substitute(&lin, &f);
                    let e2 = [0u32, 0, 2];
                    let e3 = [0u32, 0, 3];
                    if !f.is_zero(&q2.coeff(&e2, &f)) && !f.is_zero(&c2.coeff(&e3, &f)) {
                        break (t, q2, c2);
                    }
                };
                match crate::solve::solve_p2(g, lv, &q2, &c2, budget)? {
                    crate::solve::Solve::PositiveDimensional => {
                        return Ok(LinesThroughPoint { point: p.clone(), eckardt: true, lines, unsplit_degree: 0 });
                    }
                    crate::solve::Solve::Finite(s) => {
                        unsplit = s.unsplit_degree;
                        for sol in s.solutions {
                            let crate::solve::Param::Finite(v) = sol.z else { unreachable!() };
                            let lvl = g.join(sol.level, lv);
                            let fl = field(g, lvl)?;
                            let v = embed_vec(g, &v.0, sol.level, lvl)?;
                            let tl: Vec<Vec<El<G>>> =
                                t.iter().map(|r| embed_vec(g, r, lv, lvl)).collect::<Result<_>>()?;
                            let u: Vec<El<G>> =
                                (0..3).map(|i| total(&fl, (0..3).map(|j| fl.mul(&tl[i][j], &v[j])))).collect();
                            let y = direction(&u, lvl)?;
                            let xl = embed_vec(g, &x, lv, lvl)?;
                            lines.push((span(g, lvl, &[xl, y])?, sol.multiplicity));
                        }
                    }
                }
            }
            2 => {
                let uq = binary_to_uni(&q, &f);
                let uc = binary_to_uni(&c, &f);
                if q.is_zero() && c.is_zero() {
                    return Ok(LinesThroughPoint { point: p.clone(), eckardt: true, lines, unsplit_degree: 0 });
                }
                let common = match (q.is_zero(), c.is_zero()) {
                    (true, _) => uc.clone(),
                    (_, true) => uq.clone(),
                    _ => uq.gcd(&uc, &f),
                };
                if common.degree().unwrap_or(0) > 0 {
                    let rs = g.roots(&common, lv, budget.max(lv))?;
                    unsplit += rs.unsplit_degree();
                    for r in rs.roots {
                        let lvl = g.join(r.level, lv);
                        let fl = field(g, lvl)?;
                        let z = g.embed(&r.value, r.level, lvl)?;
                        let y = direction(&[z, fl.one()], lvl)?;
                        let xl = embed_vec(g, &x, lv, lvl)?;
                        lines.push((span(g, lvl, &[xl, y])?, r.multiplicity as u64));
                    }
                }
                // the direction (1:0) when both forms lose degree there
                let vanish_at_inf = |form: &MultiPoly<El<G>>, d: u32| {
                    form.is_zero() || f.is_zero(&form.coeff(&[d, 0], &f))
                };
                if vanish_at_inf(&q, 2) && vanish_at_inf(&c, 3) {
                    let ord = |form: &MultiPoly<El<G>>| {
                        if form.is_zero() {
                            u64::MAX
                        } else {
                            form.terms().map(|(e, _)| e[1] as u64).min().unwrap()
                        }
                    };
                    let m = ord(&q).min(ord(&c));
                    let y = direction(&[f.one(), f.zero()], lv)?;
                    lines.push((span(g, lv, &[x.clone(), y])?, m));
                }
            }
            _ => return Err(GeomError::Precondition("lines through a point need n = 3 or n = 4".into())),
        }
        lines.sort();
        Ok(LinesThroughPoint { point: p.clone(), eckardt: false, lines, unsplit_degree: unsplit })
    }

    /// The plane section `Pi . X` decomposed into components.
    pub fn plane_residual(&self, plane: &Plane<El<G>>, known: Option<&ProjLine<El<G>>>, seed: u64) -> Result<PlaneSection<El<G>>> {
        let g = &self.ground;
        let lvl = known.map_or(plane.level, |l| g.join(l.level, plane.level));
        let f = field(g, lvl)?;
        let basis = plane.basis_at(g, lvl)?;
        let t = self.restrict(lvl, &basis)?;
        if t.is_zero() {
            return Ok(PlaneSection { kind: SectionKind::ContainedInX, components: Vec::new(), unresolved: false });
        }
        let line_form = match known {
            Some(l) => {
                let lb = l.basis_at(g, lvl)?;
                let coords: Vec<Vec<El<G>>> =
                    lb.iter().map(|b| plane_coordinates(&basis, b, &f)).collect::<Option<_>>().ok_or_else(|| {
                        GeomError::Precondition("the line is not in the plane".into())
                    })?;
                Some((lvl, cross(&coords[0], &coords[1], &f)))
            }
            None => find_linear_factor(g, lvl, &t, seed)?,
        };
        let Some((ll, ell)) = line_form else {
            return Ok(PlaneSection { kind: SectionKind::IrreducibleCubic, components: Vec::new(), unresolved: false });
        };
        let fl = field(g, ll)?;
        let tl = embed_mpoly(g, &t, lvl, ll)?;
        let basis_l: Vec<Vec<El<G>>> = basis.iter().map(|b| embed_vec(g, b, lvl, ll)).collect::<Result<_>>()?;
        let ell_poly = linear_poly(&ell, &fl);
        let conic = tl.div_exact(&ell_poly, &fl).ok_or_else(|| GeomError::Precondition("the line is not on the cubic".into()))?;
        let first = plane_line(g, ll, &basis_l, &ell)?;
        let mut components = vec![(Component::Line(first.clone()), 1u32)];
        let mut unresolved = false;
        let residual = classify_conic(g, ll, &conic, &basis_l)?;
        match residual {
            ConicShape::Smooth => components.push((Component::Conic(conic.clone()), 1)),
            ConicShape::TwoLines(a, b) => {
                components.push((Component::Line(a), 1));
                components.push((Component::Line(b), 1));
            }
            ConicShape::DoubleLine(a) => components.push((Component::Line(a), 2)),
            ConicShape::Unresolved => {
                unresolved = true;
                components.push((Component::Conic(conic.clone()), 1));
            }
        }
        merge_components(&mut components);
        let kind = section_kind(&components);
        Ok(PlaneSection { kind, components, unresolved })
    }
}

fn merge_components<E: Clone + Eq>(c: &mut Vec<(Component<E>, u32)>) {
    let mut out: Vec<(Component<E>, u32)> = Vec::new();
    for (comp, m) in c.drain(..) {
        if let Some(slot) = out.iter_mut().find(|(x, _)| *x == comp) {
            slot.1 += m;
        } else {
            out.push((comp, m));
        }
    }
    *c = out;
}

fn section_kind<E>(c: &[(Component<E>, u32)]) -> SectionKind {
    let lines: Vec<u32> = c.iter().filter(|(x, _)| matches!(x, Component::Line(_))).map(|(_, m)| *m).collect();
    if c.iter().any(|(x, _)| matches!(x, Component::Conic(_))) {
        return SectionKind::LineAndConic;
    }
    let mut m = lines.clone();
    m.sort();
    match m.as_slice() {
        [1, 1, 1] => SectionKind::ThreeLines,
        [1, 2] => SectionKind::DoubleLineAndLine,
        [3] => SectionKind::TripleLine,
        _ => SectionKind::ThreeLines,
    }
}

fn binary_to_uni<F: Field>(p: &MultiPoly<F::Elem>, f: &F) -> exactalg::UniPoly<F::Elem> {
    // dehomogenize at u1 = 1
    p.specialize(1, &f.one(), f).to_univariate(0, f).expect("binary form")
}

/// Coordinates of `v` in the row space of an echelon basis, if it lies there.
pub fn plane_coordinates<F: Field>(basis: &[Vec<F::Elem>], v: &[F::Elem], f: &F) -> Option<Vec<F::Elem>> {
    let pivots: Vec<usize> = basis.iter().map(|r| r.iter().position(|x| !f.is_zero(x)).unwrap()).collect();
    let c: Vec<F::Elem> = pivots.iter().map(|&p| v[p].clone()).collect();
    let w: Vec<F::Elem> = (0..v.len())
        .map(|j| total(f, basis.iter().zip(&c).map(|(b, ci)| f.mul(ci, &b[j]))))
        .collect();
    (w == v).then_some(c)
}

pub fn cross<F: Field>(a: &[F::Elem], b: &[F::Elem], f: &F) -> Vec<F::Elem> {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    vec![m(1, 2), m(2, 0), m(0, 1)]
}

fn linear_poly<F: Field>(l: &[F::Elem], f: &F) -> MultiPoly<F::Elem> {
    MultiPoly::from_terms(
        3,
        (0..3).map(|i| {
            let mut e = vec![0; 3];
            e[i] = 1;
            (e, l[i].clone())
        }),
        f,
    )
}

/// The line `{ell = 0}` of the plane with the given basis, as a line of space.
fn plane_line<G: Ground>(g: &G, level: u32, basis: &[Vec<El<G>>], ell: &[El<G>]) -> Result<ProjLine<El<G>>> {
    let f = field(g, level)?;
    let ker = kernel(&vec![ell.to_vec()], 3, &f);
    let pts: Vec<Vec<El<G>>> = ker.iter().map(|c| to_space(basis, c, &f)).collect();
    span(g, level, &pts)
}

fn to_space<F: Field>(basis: &[Vec<F::Elem>], c: &[F::Elem], f: &F) -> Vec<F::Elem> {
    (0..basis[0].len()).map(|j| total(f, basis.iter().zip(c).map(|(b, ci)| f.mul(ci, &b[j])))).collect()
}

enum ConicShape<E> {
    Smooth,
    TwoLines(ProjLine<E>, ProjLine<E>),
    DoubleLine(ProjLine<E>),
    Unresolved,
}

/// Symmetric matrix `2Q` of a ternary quadratic form (characteristic not 2).
pub fn conic_matrix<F: Field>(q: &MultiPoly<F::Elem>, f: &F) -> Vec<Vec<F::Elem>> {
    let mut m = vec![vec![f.zero(); 3]; 3];
    for (e, c) in q.terms() {
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = f.add(&m[i][i], &f.add(c, c));
        } else {
            m[i][j] = f.add(&m[i][j], c);
            m[j][i] = f.add(&m[j][i], c);
        }
    }
    m
}

fn classify_conic<G: Ground>(g: &G, level: u32, q: &MultiPoly<El<G>>, basis: &[Vec<El<G>>]) -> Result<ConicShape<El<G>>> {
    let f = field(g, level)?;
    if g.characteristic() == 2 {
        return Err(GeomError::Precondition("conic classification needs odd characteristic".into()));
    }
    let m = conic_matrix(q, &f);
    match rank(&m, &f) {
        3 => Ok(ConicShape::Smooth),
        1 => {
            let ker = kernel(&m, 3, &f);
            let pts: Vec<Vec<El<G>>> = ker.iter().map(|c| to_space(basis, c, &f)).collect();
            Ok(ConicShape::DoubleLine(span(g, level, &pts)?))
        }
        2 => {
            let s = kernel(&m, 3, &f).remove(0);
            // restrict to a coordinate line avoiding the vertex s
            let j = (0..3).find(|&j| !f.is_zero(&s[j])).unwrap();
            let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
            let mut subs = vec![MultiPoly::zero(2); 3];
            subs[others[0]] = MultiPoly::var(2, 0, &f);
            subs[others[1]] = MultiPoly::var(2, 1, &f);
            let b = q.substitute(&subs, &f);
            let u = binary_to_uni(&b, &f);
            let mut pts: Vec<(u32, Vec<El<G>>)> = Vec::new();
            if u.degree().unwrap_or(0) < 2 {
                // root at (1:0)
                let mut v = vec![f.zero(); 3];
                v[others[0]] = f.one();
                pts.push((level, v));
            }
            if u.degree().unwrap_or(0) > 0 {
                let rs = g.roots(&u, level, g.budget().max(level))?;
                if !rs.fully_split() {
                    return Ok(ConicShape::Unresolved);
                }
                for r in rs.roots {
                    let lvl = g.join(level, r.level);
                    let fl = field(g, lvl)?;
                    let mut v = vec![fl.zero(); 3];
                    v[others[0]] = g.embed(&r.value, r.level, lvl)?;
                    v[others[1]] = fl.one();
                    for _ in 0..r.multiplicity {
                        pts.push((lvl, v.clone()));
                    }
                }
            }
            let mut lines = Vec::new();
            for (lvl, v) in pts.into_iter().take(2) {
                let fl = field(g, lvl)?;
                let bl: Vec<Vec<El<G>>> = basis.iter().map(|b| embed_vec(g, b, level, lvl)).collect::<Result<_>>()?;
                let sl = embed_vec(g, &s, level, lvl)?;
                lines.push(span(g, lvl, &[to_space(&bl, &sl, &fl), to_space(&bl, &v, &fl)])?);
            }
            let b = lines.pop().unwrap();
            let a = lines.pop().unwrap();
            Ok(ConicShape::TwoLines(a, b))
        }
        _ => Err(GeomError::Consistency("zero residual conic".into())),
    }
}

/// A linear factor of a ternary cubic, searched in the tower.
fn find_linear_factor<G: Ground>(g: &G, level: u32, t: &MultiPoly<El<G>>, seed: u64) -> Result<Option<(u32, Vec<El<G>>)>> {
    let f = field(g, level)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xFAC7);
    // a change of coordinates sending a point off the curve to (1:0:0)
    let mut tries = 0;
    let (mat, tt) = loop {
        tries += 1;
        if tries > 500 {
            return Err(GeomError::Precondition("no point off the plane cubic found".into()));
        }
        let m: Vec<Vec<El<G>>> = (0..3).map(|_| (0..3).map(|_| f.random_elem(&mut rng)).collect()).collect();
        if rank(&m, &f) < 3 {
            continue;
        }
        let lin: Vec<MultiPoly<El<G>>> = (0..3).map(|i| linear_poly(&m[i], &f)).collect();
        let tt = t.substitute(&lin, &f);
        if !f.is_zero(&tt.coeff(&[3, 0, 0], &f)) {
            break (m, tt);
        }
    };
    let restrict_axis = |k: usize| -> exactalg::UniPoly<El<G>> {
        // T(x, 1, 0) or T(x, 0, 1) as a polynomial in x
        let mut s = tt.clone();
        let other = if k == 1 { 2 } else { 1 };
        s = s.specialize(other, &f.zero(), &f).specialize(k, &f.one(), &f);
        s.to_univariate(0, &f).unwrap()
    };
    let rb = g.roots(&restrict_axis(1), level, g.budget().max(level))?;
    let rc = g.roots(&restrict_axis(2), level, g.budget().max(level))?;
    for b in &rb.roots {
        for c in &rc.roots {
            let lvl = g.join(level, g.join(b.level, c.level));
            let fl = field(g, lvl)?;
            let bv = g.embed(&b.value, b.level, lvl)?;
            let cv = g.embed(&c.value, c.level, lvl)?;
            // ell = x0 - b x1 - c x2 in the new coordinates
            let ell = vec![fl.one(), fl.neg(&bv), fl.neg(&cv)];
            let ttl = embed_mpoly(g, &tt, level, lvl)?;
            if ttl.div_exact(&linear_poly(&ell, &fl), &fl).is_some() {
                // pull back: new coords v = M^{-1} u, so ell(v) as a form in u is ell * M^{-1}
                let ml: Vec<Vec<El<G>>> = mat.iter().map(|r| embed_vec(g, r, level, lvl)).collect::<Result<_>>()?;
                let inv = invert3(&ml, &fl);
                let back: Vec<El<G>> = (0..3).map(|j| total(&fl, (0..3).map(|i| fl.mul(&ell[i], &inv[i][j])))).collect();
                return Ok(Some((lvl, back)));
            }
        }
    }
    Ok(None)
}

fn invert3<F: Field>(m: &[Vec<F::Elem>], f: &F) -> Vec<Vec<F::Elem>> {
    let mut a: Vec<Vec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..3).map(|j| if i == j { f.one() } else { f.zero() }));
            row
        })
        .collect();
    exactalg::linalg::rref(&mut a, f);
    a.into_iter().map(|r| r[3..].to_vec()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinesThroughPoint<E> {
    pub point: Point<E>,
    /// Infinitely many lines pass through the point.
    pub eckardt: bool,
    pub lines: Vec<(ProjLine<E>, u64)>,
    pub unsplit_degree: usize,
}

impl<E> LinesThroughPoint<E> {
    pub fn total(&self) -> u64 {
        self.lines.iter().map(|(_, m)| m).sum::<u64>() + self.unsplit_degree as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component<E> {
    Line(ProjLine<E>),
    /// A conic, as a ternary form in the coordinates of the plane basis.
    Conic(MultiPoly<E>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    ContainedInX,
    IrreducibleCubic,
    LineAndConic,
    ThreeLines,
    DoubleLineAndLine,
    TripleLine,
}

impl SectionKind {
    pub fn label(&self) -> &'static str {
        match self {
            SectionKind::ContainedInX => "plane contained in X",
            SectionKind::IrreducibleCubic => "irreducible cubic",
            SectionKind::LineAndConic => "line + smooth conic",
            SectionKind::ThreeLines => "three lines",
            SectionKind::DoubleLineAndLine => "double line + line",
            SectionKind::TripleLine => "triple line",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSection<E> {
    pub kind: SectionKind,
    pub components: Vec<(Component<E>, u32)>,
    /// Some residual line pair did not split within the budget.
    pub unresolved: bool,
}

/// The canonical point with the given coordinates.
pub fn point_of<G: Ground>(g: &G, level: u32, coords: &[El<G>]) -> Result<Point<El<G>>> {
    point(g, level, coords)
}

/// Outcome of a search for singular points over finite levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    /// Levels whose points were all checked.
    pub exhaustive_levels: Vec<u32>,
    /// Levels checked on random samples, with the sample size.
    pub sampled_levels: Vec<(u32, u64)>,
    pub singular_point: Option<Point<u32>>,
    pub char3_warning: bool,
}

impl SmoothnessCertificate {
    pub fn smooth_so_far(&self) -> bool {
        self.singular_point.is_none()
    }
}

/// Largest number of points whose level is searched exhaustively.
pub const EXHAUSTIVE_LIMIT: u128 = 2_000_000;

impl CubicForm<FieldTower> {
    fn singular_here(&self, level: u32, x: &[u32]) -> Result<bool> {
        let f = field(&self.ground, level)?;
        let lf = self.at(level)?;
        if lf.grad.iter().any(|d| !f.is_zero(&d.eval(x, &f))) {
            return Ok(false);
        }
        Ok(f.is_zero(&lf.f.eval(x, &f)))
    }

    /// Looks for a singular point in levels `1..=max_level`: exhaustively while
    /// a level has at most [`EXHAUSTIVE_LIMIT`] points, by sampling beyond.
    pub fn smoothness_probe(&self, max_level: u32, samples: u64, seed: u64) -> Result<SmoothnessCertificate> {
        let g = &self.ground;
        let mut cert = SmoothnessCertificate {
            exhaustive_levels: Vec::new(),
            sampled_levels: Vec::new(),
            singular_point: None,
            char3_warning: self.char3_warning(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5100);
        for k in 1..=max_level {
            let f = field(g, k)?;
            let q = f.order().unwrap() as u128;
            let count: u128 = (0..=self.n as u32).map(|i| q.pow(i)).sum();
            if count <= EXHAUSTIVE_LIMIT {
                for x in crate::space::projective_points(self.n, &f) {
                    if self.singular_here(k, &x)? {
                        cert.singular_point = Some(point(g, k, &x)?);
                        return Ok(cert);
                    }
                }
                cert.exhaustive_levels.push(k);
            } else {
                for _ in 0..samples {
                    let x: Vec<u32> = (0..=self.n).map(|_| rng.gen_range(0..q as u32)).collect();
                    if x.iter().all(|c| *c == 0) {
                        continue;
                    }
                    if self.singular_here(k, &x)? {
                        cert.singular_point = Some(point(g, k, &x)?);
                        return Ok(cert);
                    }
                }
                cert.sampled_levels.push((k, samples));
            }
        }
        Ok(cert)
    }
}
