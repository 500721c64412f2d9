//! Reproducible test configurations.

use exactalg::{Field, FieldTower, Ground, RationalGround};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubic::CubicForm;
use crate::curves::{conic_residual_to_line, plane_through, ConicResidual, RationalCurve};
use crate::error::{GeomError, Result};
use crate::space::{span, El, Plane, ProjLine};

/// Exponent vectors of all cubic monomials in `m` variables, in lexicographic order.
pub fn cubic_monomials(m: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut e = vec![0u32; m];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == e.len() {
            e[i] = left;
            out.push(e.clone());
            return;
        }
        for k in (0..=left).rev() {
            e[i] = k;
            rec(i + 1, left - k, e, out);
        }
    }
    rec(0, 3, &mut e, &mut out);
    out
}

fn supported_in(e: &[u32], vars: &[usize]) -> bool {
    e.iter().enumerate().all(|(i, &k)| k == 0 || vars.contains(&i))
}

/// A threefold containing `L0 = {x2 = x3 = x4 = 0}` and `L1 = {x0 = x1 = x4 = 0}`.
#[derive(Clone, Debug)]
pub struct SkewLinesFixture<G: Ground> {
    pub cubic: CubicForm<G>,
    pub terms: Vec<(Vec<u32>, BigInt)>,
    pub l0: ProjLine<El<G>>,
    pub l1: ProjLine<El<G>>,
    /// The plane `{x3 = x4 = 0}` through `L0`.
    pub plane: Plane<El<G>>,
    /// The conic residual to `L0` in that plane.
    pub conic: RationalCurve<El<G>>,
    pub seed: u64,
}

fn unit<F: Field>(m: usize, i: usize, f: &F) -> Vec<F::Elem> {
    (0..m).map(|j| if i == j { f.one() } else { f.zero() }).collect()
}

fn assemble<G: Ground>(ground: G, terms: Vec<(Vec<u32>, BigInt)>, seed: u64) -> Result<SkewLinesFixture<G>> {
    let cubic = CubicForm::from_integer_terms(ground.clone(), 4, &terms)?;
    let f = ground.level(1)?;
    let l0 = span(&ground, 1, &[unit(5, 0, &f), unit(5, 1, &f)])?;
    let l1 = span(&ground, 1, &[unit(5, 2, &f), unit(5, 3, &f)])?;
    let plane = plane_through(&ground, &l0, 1, &unit(5, 2, &f))?;
    let conic = match conic_residual_to_line(&cubic, &l0, &plane, seed)? {
        ConicResidual::Curve(c) if c.level == 1 => c,
        _ => return Err(GeomError::Precondition("residual conic is not a smooth conic with a point".into())),
    };
    Ok(SkewLinesFixture { cubic, terms, l0, l1, plane, conic, seed })
}

/// Searches seeds from `seed` for a cubic over `F_p` with random coefficients
/// containing `L0, L1`, with no singular point over `F_p`, a smooth
/// residual conic in `{x3 = x4 = 0}`, and five distinct reduced common
/// transversals of `L0, L1` (a cheap test of general position).
pub fn skew_lines_threefold(p: u32, seed: u64) -> Result<SkewLinesFixture<FieldTower>> {
    let tower = FieldTower::new(p, 6, seed)?;
    for s in seed..seed + 200 {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let terms: Vec<(Vec<u32>, BigInt)> = cubic_monomials(5)
            .into_iter()
            .filter(|e| !supported_in(e, &[0, 1]) && !supported_in(e, &[2, 3]))
            .map(|e| (e, BigInt::from(rng.gen_range(0..p))))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect();
        let Ok(fx) = assemble(tower.clone(), terms, s) else { continue };
        let cert = fx.cubic.smoothness_probe(2, 20_000, s)?;
        if cert.smooth_so_far() && transversals_reduced(&fx)? {
            return Ok(fx);
        }
    }
    Err(GeomError::Precondition("no smooth fixture found".into()))
}

fn transversals_reduced(fx: &SkewLinesFixture<FieldTower>) -> Result<bool> {
    let g = fx.cubic.ground();
    let a = RationalCurve::from_line(g, &fx.l0)?;
    let b = RationalCurve::from_line(g, &fx.l1)?;
    Ok(crate::secant::count_secants_pair(&fx.cubic, &a, &b, fx.seed)?.well_positioned)
}

/// The same construction over the rationals, with small integer
/// coefficients and the residual conic through `(1:0:0:0:0)`. Smoothness is
/// checked on the reduction modulo 7.
pub fn skew_lines_threefold_rational(seed: u64) -> Result<SkewLinesFixture<RationalGround>> {
    for s in seed..seed + 200 {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let terms: Vec<(Vec<u32>, BigInt)> = cubic_monomials(5)
            .into_iter()
            .filter(|e| !supported_in(e, &[0, 1]) && !supported_in(e, &[2, 3]) && *e != vec![2, 0, 1, 0, 0])
            .map(|e| (e, BigInt::from(rng.gen_range(-3i64..=3))))
            .filter(|(_, c)| *c != BigInt::from(0))
            .collect();
        let Ok(mod7) = CubicForm::from_integer_terms(FieldTower::new(7, 2, 0)?, 4, &terms) else { continue };
        if !mod7.smoothness_probe(1, 0, s)?.smooth_so_far() {
            continue;
        }
        if let Ok(fx) = assemble(RationalGround, terms, s) {
            return Ok(fx);
        }
    }
    Err(GeomError::Precondition("no rational fixture found".into()))
}

/// Census lines of the fixture sorted by how they meet the conic: lines
/// disjoint from it, and lines meeting it once transversally (other than `L0`).
pub fn lines_by_conic_meeting(fx: &SkewLinesFixture<FieldTower>) -> Result<(Vec<ProjLine<u32>>, Vec<ProjLine<u32>>)> {
    let g = fx.cubic.ground();
    let census = crate::fano::enumerate_lines(&fx.cubic, 1)?;
    let mut disjoint = Vec::new();
    let mut once = Vec::new();
    for l in census.lines {
        if l == fx.l0 {
            continue;
        }
        let c = RationalCurve::from_line(g, &l)?;
        let m = crate::curves::curve_meeting_data(g, &c, &fx.conic, fx.seed)?;
        if m.unsplit_degree > 0 {
            continue;
        }
        match m.r() {
            0 => disjoint.push(l),
            1 if m.all_transversal() => once.push(l),
            _ => {}
        }
    }
    Ok((disjoint, once))
}
