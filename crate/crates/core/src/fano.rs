//! Lines on cubic surfaces and threefolds over finite fields, and the
//! geometry of the projection from a line.

use exactalg::linalg::{complement, kernel, rank};
use exactalg::{Field, FieldTower, Ground, MultiPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cubic::{CubicForm, LinesThroughPoint, PlaneSection, SectionKind};
use crate::curves::{curve_meeting_data, RationalCurve};
use crate::error::{GeomError, Result};
use crate::secant::{count_secants_pair, SecantReport};
use crate::space::{embed_vec, field, lines_meet, point, span, El, Plane, Point, ProjLine};

/// Largest number of candidate lines a census scans.
pub const COST_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCensus {
    pub level: u32,
    pub lines: Vec<ProjLine<u32>>,
    /// Row-major: `adjacency[i][j]` iff lines `i` and `j` are distinct and meet.
    pub adjacency: Vec<Vec<bool>>,
    pub second_type: Vec<bool>,
}

impl LineCensus {
    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(|r| r.iter().filter(|b| **b).count()).collect()
    }

    /// Rows packed most significant bit first, then concatenated.
    pub fn adjacency_bytes(&self) -> Vec<u8> {
        let n = self.lines.len();
        let mut out = vec![0u8; (n * n).div_ceil(8)];
        for i in 0..n {
            for j in 0..n {
                if self.adjacency[i][j] {
                    let k = i * n + j;
                    out[k / 8] |= 0x80 >> (k % 8);
                }
            }
        }
        out
    }
}

/// Number of 2-dimensional subspaces of `F_q^m`.
pub fn line_count(m: usize, q: u128) -> u128 {
    let mut c = 0u128;
    for i in 0..m {
        for j in i + 1..m {
            c += q.pow((m - 1 - i - 1) as u32 + (m - 1 - j) as u32);
        }
    }
    c
}

fn echelon(m: usize, i: usize, j: usize, mut code: u64, q: u64) -> [Vec<u32>; 2] {
    let mut a = vec![0u32; m];
    let mut b = vec![0u32; m];
    a[i] = 1;
    b[j] = 1;
    for (k, slot) in a.iter_mut().enumerate().skip(i + 1) {
        if k != j {
            *slot = (code % q) as u32;
            code /= q;
        }
    }
    for slot in b.iter_mut().skip(j + 1) {
        *slot = (code % q) as u32;
        code /= q;
    }
    [a, b]
}

/// All lines of the cubic defined over the given level, by exhaustive scan.
pub fn enumerate_lines(x: &CubicForm<FieldTower>, level: u32) -> Result<LineCensus> {
    let g = x.ground();
    let f = field(g, level)?;
    let q = f.order().unwrap();
    let m = x.n() + 1;
    let estimated = line_count(m, q as u128);
    if estimated > COST_LIMIT {
        return Err(GeomError::CostGuard { estimated, limit: COST_LIMIT });
    }
    let lf = x.at(level)?;
    let mut jobs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let free = (m - 1 - i - 1) + (m - 1 - j);
            let total = q.pow(free as u32);
            let chunk = 1u64 << 12;
            let mut s = 0;
            while s < total {
                jobs.push((i, j, s, (s + chunk).min(total)));
                s += chunk;
            }
        }
    }
    let two = f.add(&f.one(), &f.one());
    let mut found: Vec<[Vec<u32>; 2]> = jobs
        .par_iter()
        .flat_map_iter(|&(i, j, s, e)| {
            let f = f.clone();
            let lf = lf.clone();
            (s..e).filter_map(move |code| {
                let [a, b] = echelon(m, i, j, code, q);
                let on = |v: &[u32]| f.is_zero(&lf.f.eval(v, &f));
                if !on(&a) || !on(&b) {
                    return None;
                }
                let hit = if q >= 3 {
                    let ab: Vec<u32> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
                    let a2b: Vec<u32> = a.iter().zip(&b).map(|(x, y)| f.add(x, &f.mul(&two, y))).collect();
                    on(&ab) && on(&a2b)
                } else {
                    let d1: u32 = lf.grad.iter().zip(&b).fold(0, |acc, (d, y)| f.add(&acc, &f.mul(&d.eval(&a, &f), y)));
                    let d2: u32 = lf.grad.iter().zip(&a).fold(0, |acc, (d, y)| f.add(&acc, &f.mul(&d.eval(&b, &f), y)));
                    d1 == 0 && d2 == 0
                };
                hit.then_some([a, b])
            })
        })
        .collect();
    found.sort();
    let lines: Vec<ProjLine<u32>> = found.iter().map(|[a, b]| span(g, level, &[a.clone(), b.clone()])).collect::<Result<_>>()?;
    let n = lines.len();
    let adjacency: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        return false;
                    }
                    let mut mat = vec![found[i][0].clone(), found[i][1].clone(), found[j][0].clone(), found[j][1].clone()];
                    mat.truncate(4);
                    rank(&mat, &f) < 4
                })
                .collect()
        })
        .collect();
    let second_type = lines
        .par_iter()
        .map(|l| second_type_test(x, l).map(|s| s.second_type))
        .collect::<Result<Vec<_>>>()?;
    Ok(LineCensus { level, lines, adjacency, second_type })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondType<E> {
    pub second_type: bool,
    /// A plane `Pi` through the line whose section contains the line twice.
    pub witness: Option<Plane<E>>,
    pub section: Option<PlaneSection<E>>,
}

/// Whether some plane through `l` meets the cubic in `2l + l'`.
///
/// A plane `span(l, w)` has section `nu (F1(p; w) + nu F2(p; w) + nu^2 F(w))`
/// with `p` on `l`; the line is doubled iff the quadratic form `F1(p; w)` in
/// `p` vanishes, which is linear in `w`.
pub fn second_type_test<G: Ground>(x: &CubicForm<G>, l: &ProjLine<El<G>>) -> Result<SecondType<El<G>>> {
    let g = x.ground();
    let lvl = l.level;
    let f = field(g, lvl)?;
    if !x.contains_line(l)? {
        return Err(GeomError::Precondition("the line is not on the cubic".into()));
    }
    let (a, b) = (l.rows[0].clone(), l.rows[1].clone());
    let ab: Vec<El<G>> = a.iter().zip(&b).map(|(x, y)| f.add(x, y)).collect();
    let dirs = complement(&[a.clone(), b.clone()], x.n() + 1, &f);
    let mut rows = vec![Vec::new(), Vec::new(), Vec::new()];
    for w in &dirs {
        let faa = x.polar1(lvl, &a, w)?;
        let fbb = x.polar1(lvl, &b, w)?;
        let fab = f.sub(&f.sub(&x.polar1(lvl, &ab, w)?, &faa), &fbb);
        rows[0].push(faa);
        rows[1].push(fab);
        rows[2].push(fbb);
    }
    let ker = kernel(&rows, dirs.len(), &f);
    let Some(u) = ker.first() else {
        return Ok(SecondType { second_type: false, witness: None, section: None });
    };
    let w: Vec<El<G>> = (0..=x.n())
        .map(|j| dirs.iter().zip(u).fold(f.zero(), |acc, (d, c)| f.add(&acc, &f.mul(c, &d[j]))))
        .collect();
    let plane = span(g, lvl, &[a, b, w])?;
    let section = x.plane_residual(&plane, Some(l), 0)?;
    Ok(SecondType { second_type: true, witness: Some(plane), section: Some(section) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantSample<E> {
    pub point: Point<E>,
    pub smooth: bool,
    pub fiber_degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantCurve<E> {
    /// Ternary form in the coordinates of the planes through the line.
    pub form: MultiPoly<E>,
    pub level: u32,
    pub degree: u32,
    pub samples: Vec<DiscriminantSample<E>>,
    /// Random points off the curve whose fiber conic is smooth.
    pub off_curve_smooth_fibers: usize,
    pub quintic_genus: u32,
    pub double_cover_genus: u32,
}

fn cofactor_det<F: Field>(m: &[Vec<MultiPoly<F::Elem>>], f: &F) -> MultiPoly<F::Elem> {
    let t = |i: usize, j: usize, k: usize, l: usize| m[i][k].mul(&m[j][l], f).sub(&m[i][l].mul(&m[j][k], f), f);
    m[0][0]
        .mul(&t(1, 2, 1, 2), f)
        .sub(&m[0][1].mul(&t(1, 2, 0, 2), f), f)
        .add(&m[0][2].mul(&t(1, 2, 0, 1), f), f)
}

/// The fiber conic over a plane direction `u` as the symmetric matrix of `2Q`
/// in the plane coordinates `(lambda, mu, nu)`.
fn fiber_matrix<G: Ground>(
    x: &CubicForm<G>,
    lvl: u32,
    a: &[El<G>],
    b: &[El<G>],
    dirs: &[Vec<El<G>>],
) -> Result<Vec<Vec<MultiPoly<El<G>>>>> {
    let f = field(x.ground(), lvl)?;
    let k = dirs.len();
    let linear = |vals: Vec<El<G>>| {
        MultiPoly::from_terms(
            k,
            vals.into_iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; k];
                e[i] = 1;
                (e, c)
            }),
            &f,
        )
    };
    let ab: Vec<El<G>> = a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect();
    let mut q11 = Vec::new();
    let mut q22 = Vec::new();
    let mut q12 = Vec::new();
    for w in dirs {
        let faa = x.polar1(lvl, a, w)?;
        let fbb = x.polar1(lvl, b, w)?;
        q12.push(f.sub(&f.sub(&x.polar1(lvl, &ab, w)?, &faa), &fbb));
        q11.push(faa);
        q22.push(fbb);
    }
    let (q11, q12, q22) = (linear(q11), linear(q12), linear(q22));
    let lf = x.at(lvl)?;
    let wsubs: Vec<MultiPoly<El<G>>> = (0..=x.n()).map(|j| linear(dirs.iter().map(|d| d[j].clone()).collect())).collect();
    let grad_w: Vec<MultiPoly<El<G>>> = lf.grad.iter().map(|d| d.substitute(&wsubs, &f)).collect();
    let dot = |v: &[El<G>]| grad_w.iter().zip(v).fold(MultiPoly::zero(k), |acc, (d, c)| acc.add(&d.scale(c, &f), &f));
    let l1 = dot(a);
    let l2 = dot(b);
    let c = lf.f.substitute(&wsubs, &f);
    let two = f.from_i64(2);
    Ok(vec![
        vec![q11.scale(&two, &f), q12.clone(), l1.clone()],
        vec![q12, q22.scale(&two, &f), l2.clone()],
        vec![l1, l2, c.scale(&two, &f)],
    ])
}

/// The discriminant of the conic bundle given by projecting from `l`.
pub fn discriminant_quintic<G: Ground>(x: &CubicForm<G>, l: &ProjLine<El<G>>, samples: usize, seed: u64) -> Result<DiscriminantCurve<El<G>>> {
    let g = x.ground();
    if x.n() != 4 {
        return Err(GeomError::Precondition("the discriminant quintic needs a threefold".into()));
    }
    if g.characteristic() == 2 {
        return Err(GeomError::Precondition("conic discriminants need odd characteristic".into()));
    }
    if !x.contains_line(l)? {
        return Err(GeomError::Precondition("the line is not on the cubic".into()));
    }
    let lvl = l.level;
    let f = field(g, lvl)?;
    let (a, b) = (l.rows[0].clone(), l.rows[1].clone());
    let dirs = complement(&[a.clone(), b.clone()], 5, &f);
    let mat = fiber_matrix(x, lvl, &a, &b, &dirs)?;
    let det = cofactor_det(&mat, &f);
    if det.is_zero() {
        return Err(GeomError::Precondition("the discriminant vanishes identically".into()));
    }
    let degree = det.homogeneous_degree().ok_or_else(|| GeomError::Consistency("discriminant is not homogeneous".into()))?;
    let grad = det.gradient(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD15C);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < samples && tries < 50 * samples.max(1) {
        tries += 1;
        let p: Vec<El<G>> = (0..3).map(|_| f.random_elem(&mut rng)).collect();
        let q: Vec<El<G>> = (0..3).map(|_| f.random_elem(&mut rng)).collect();
        if rank(&vec![p.clone(), q.clone()], &f) < 2 {
            continue;
        }
        // the binary quintic det(z p + q)
        let subs: Vec<MultiPoly<El<G>>> = (0..3)
            .map(|i| MultiPoly::from_terms(1, vec![(vec![1], p[i].clone()), (vec![0], q[i].clone())], &f))
            .collect();
        let u = det.substitute(&subs, &f).to_univariate(0, &f).unwrap();
        if u.degree().unwrap_or(0) == 0 {
            continue;
        }
        let rs = g.roots(&u, lvl, g.budget().max(lvl))?;
        for r in rs.roots {
            if out.len() >= samples {
                break;
            }
            let rl = g.join(r.level, lvl);
            let fl = field(g, rl)?;
            let z = g.embed(&r.value, r.level, rl)?;
            let (pl, ql) = (embed_vec(g, &p, lvl, rl)?, embed_vec(g, &q, lvl, rl)?);
            let pt: Vec<El<G>> = (0..3).map(|i| fl.add(&fl.mul(&z, &pl[i]), &ql[i])).collect();
            let canon = point(g, rl, &pt)?;
            if out.iter().any(|s: &DiscriminantSample<El<G>>| s.point == canon) {
                continue;
            }
            let gl: Vec<MultiPoly<El<G>>> = grad.iter().map(|d| crate::space::embed_mpoly(g, d, lvl, rl)).collect::<Result<_>>()?;
            let smooth = gl.iter().any(|d| !fl.is_zero(&d.eval(&pt, &fl)));
            let m: Vec<Vec<El<G>>> = mat
                .iter()
                .map(|row| row.iter().map(|e| Ok(crate::space::embed_mpoly(g, e, lvl, rl)?.eval(&pt, &fl))).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            out.push(DiscriminantSample { point: canon, smooth, fiber_degenerate: rank(&m, &fl) < 3 });
        }
    }
    let mut off = 0;
    for _ in 0..samples {
        let p: Vec<El<G>> = (0..3).map(|_| f.random_elem(&mut rng)).collect();
        if f.is_zero(&det.eval(&p, &f)) {
            continue;
        }
        let m: Vec<Vec<El<G>>> = mat.iter().map(|row| row.iter().map(|e| e.eval(&p, &f)).collect()).collect();
        if rank(&m, &f) == 3 {
            off += 1;
        }
    }
    let genus = (degree.saturating_sub(1)) * (degree.saturating_sub(2)) / 2;
    Ok(DiscriminantCurve {
        form: det,
        level: lvl,
        degree,
        samples: out,
        off_curve_smooth_fibers: off,
        quintic_genus: genus,
        double_cover_genus: 2 * genus - 1,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceRow<E> {
    pub report: SecantReport<E>,
    pub expected_total: i64,
    pub meeting_point: Point<E>,
    pub six_lines: LinesThroughPoint<E>,
    pub contains_l: bool,
    /// Transversality to the branch divisor is not checked.
    pub clause_iii_unchecked: bool,
}

/// The lines meeting both `C` and `L` for a line `L` meeting `C` once.
pub fn correspondence_row<G: Ground>(x: &CubicForm<G>, c: &RationalCurve<El<G>>, l: &ProjLine<El<G>>, seed: u64) -> Result<CorrespondenceRow<El<G>>> {
    let g = x.ground();
    if !x.contains_line(l)? {
        return Err(GeomError::Precondition("the line is not on the cubic".into()));
    }
    let lc = RationalCurve::from_line(g, l)?;
    let meet = curve_meeting_data(g, &lc, c, seed)?;
    if meet.r() != 1 || !meet.all_transversal() || meet.unsplit_degree > 0 {
        return Err(GeomError::Precondition("the line must meet the curve transversally in one point".into()));
    }
    let report = count_secants_pair(x, &lc, c, seed)?;
    let xpt = meet.points[0].point.clone();
    let six = x.lines_through_point(&xpt, seed)?;
    let contains_l = six.lines.iter().any(|(m, _)| m == l);
    Ok(CorrespondenceRow {
        report,
        expected_total: 5 * c.e as i64 - 5,
        meeting_point: xpt,
        six_lines: six,
        contains_l,
        clause_iii_unchecked: true,
    })
}

/// Witness check: the section by the witness plane contains the line doubly.
pub fn witness_is_double(s: &SecondType<impl Clone + Eq>) -> bool {
    matches!(
        s.section.as_ref().map(|p| p.kind),
        Some(SectionKind::DoubleLineAndLine) | Some(SectionKind::TripleLine)
    )
}

/// Lines of the census meeting `l`.
pub fn neighbours<G: Ground>(g: &G, lines: &[ProjLine<El<G>>], l: &ProjLine<El<G>>) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, m) in lines.iter().enumerate() {
        if m != l && lines_meet(g, m, l)? {
            out.push(i);
        }
    }
    Ok(out)
}
