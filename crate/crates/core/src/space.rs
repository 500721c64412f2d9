//! Points, lines and planes of projective space over a ground with extension levels.

use exactalg::linalg::{rank, rref};
use exactalg::{Field, Ground, MultiPoly, UniPoly};

use crate::error::{GeomError, Result};

pub type El<G> = <<G as Ground>::F as Field>::Elem;

pub fn field<G: Ground>(g: &G, level: u32) -> Result<G::F> {
    Ok(g.level(level)?)
}

pub fn embed_vec<G: Ground>(g: &G, v: &[El<G>], from: u32, to: u32) -> Result<Vec<El<G>>> {
    v.iter().map(|x| Ok(g.embed(x, from, to)?)).collect()
}

pub fn embed_mpoly<G: Ground>(g: &G, p: &MultiPoly<El<G>>, from: u32, to: u32) -> Result<MultiPoly<El<G>>> {
    if from == to {
        return Ok(p.clone());
    }
    let f = field(g, to)?;
    let terms = p
        .terms()
        .map(|(e, c)| Ok((e.clone(), g.embed(c, from, to)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiPoly::from_terms(p.nvars(), terms, &f))
}

pub fn embed_upoly<G: Ground>(g: &G, p: &UniPoly<El<G>>, from: u32, to: u32) -> Result<UniPoly<El<G>>> {
    if from == to {
        return Ok(p.clone());
    }
    Ok(g.embed_poly(p, from, to)?)
}

/// The smallest level containing every entry, and the entries descended to it.
pub fn descend_all<G: Ground>(g: &G, v: &[El<G>], level: u32) -> (u32, Vec<El<G>>) {
    let m = v.iter().fold(1u32, |acc, x| g.join(acc, g.min_level(x, level)));
    let out = v.iter().map(|x| g.descend(x, level, m).expect("entry lies in the joined level")).collect();
    (m, out)
}

/// A point of projective space, normalized with first nonzero coordinate 1 and
/// stored at the smallest level containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<E> {
    pub level: u32,
    pub coords: Vec<E>,
}

impl<E: Clone> Point<E> {
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

pub fn point<G: Ground>(g: &G, level: u32, coords: &[El<G>]) -> Result<Point<El<G>>> {
    let f = field(g, level)?;
    let lead = coords
        .iter()
        .find(|c| !f.is_zero(c))
        .ok_or_else(|| GeomError::Invalid("zero vector is not a projective point".into()))?;
    let inv = f.inv(lead).unwrap();
    let scaled: Vec<El<G>> = coords.iter().map(|c| f.mul(c, &inv)).collect();
    let (lvl, coords) = descend_all(g, &scaled, level);
    Ok(Point { level: lvl, coords })
}

impl<E: Clone + Eq> Point<E> {
    pub fn at<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, level: u32) -> Result<Vec<E>> {
        embed_vec(g, &self.coords, self.level, level)
    }
}

/// A linear subspace of projective space given by the reduced row echelon
/// form of a spanning matrix, at the smallest level containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<E> {
    pub level: u32,
    pub rows: Vec<Vec<E>>,
}

pub type ProjLine<E> = Subspace<E>;
pub type Plane<E> = Subspace<E>;

/// Canonical span of `k` points; errors when they are dependent.
pub fn span<G: Ground>(g: &G, level: u32, pts: &[Vec<El<G>>]) -> Result<Subspace<El<G>>> {
    let f = field(g, level)?;
    let mut m: Vec<Vec<El<G>>> = pts.to_vec();
    let piv = rref(&mut m, &f);
    if piv.len() < pts.len() {
        return Err(GeomError::DegenerateSpan);
    }
    let flat: Vec<El<G>> = m.iter().flatten().cloned().collect();
    let (lvl, flat) = descend_all(g, &flat, level);
    let width = pts[0].len();
    Ok(Subspace { level: lvl, rows: flat.chunks(width).map(|c| c.to_vec()).collect() })
}

impl<E: Clone + Eq> Subspace<E> {
    pub fn dim(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn ambient(&self) -> usize {
        self.rows[0].len() - 1
    }

    /// Spanning vectors embedded in `level`.
    pub fn basis_at<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, level: u32) -> Result<Vec<Vec<E>>> {
        self.rows.iter().map(|r| embed_vec(g, r, self.level, level)).collect()
    }

    pub fn contains_point<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G, p: &Point<E>) -> Result<bool> {
        let lvl = g.join(self.level, p.level);
        let f = field(g, lvl)?;
        let mut m = self.basis_at(g, lvl)?;
        m.push(p.at(g, lvl)?);
        Ok(rank(&m, &f) == self.rows.len())
    }

    /// 2x2 minors of the echelon rows (lines only).
    pub fn plucker<G: Ground<F = F>, F: Field<Elem = E>>(&self, g: &G) -> Result<Vec<E>> {
        assert_eq!(self.rows.len(), 2, "Plucker coordinates of a line");
        let f = field(g, self.level)?;
        Ok(exactalg::linalg::wedge(&self.rows[0], &self.rows[1], &f))
    }
}

/// Whether two lines meet.
pub fn lines_meet<G: Ground>(g: &G, a: &ProjLine<El<G>>, b: &ProjLine<El<G>>) -> Result<bool> {
    let lvl = g.join(a.level, b.level);
    let f = field(g, lvl)?;
    let mut m = a.basis_at(g, lvl)?;
    m.extend(b.basis_at(g, lvl)?);
    Ok(rank(&m, &f) < 4)
}

/// The Grassmann-Plucker relations `p_ij p_kl - p_ik p_jl + p_il p_jk = 0`.
pub fn plucker_relations_hold<F: Field>(p: &[F::Elem], n: usize, f: &F) -> bool {
    let idx = |i: usize, j: usize| -> usize {
        // index of (i, j), i < j, in the lexicographic list of pairs
        (0..i).map(|k| n - k).sum::<usize>() + (j - i - 1)
    };
    let m = n + 1;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let t1 = f.mul(&p[idx(i, j)], &p[idx(k, l)]);
                    let t2 = f.mul(&p[idx(i, k)], &p[idx(j, l)]);
                    let t3 = f.mul(&p[idx(i, l)], &p[idx(j, k)]);
                    if !f.is_zero(&f.add(&f.sub(&t1, &t2), &t3)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All points of `P^n` over a finite level, first nonzero coordinate 1.
pub fn projective_points<F: Field<Elem = u32>>(n: usize, f: &F) -> impl Iterator<Item = Vec<u32>> + '_ {
    let q = f.order().expect("finite field") as u32;
    (0..=n).rev().flat_map(move |lead| {
        // coordinates before `lead` are zero, `lead` is 1, the rest free
        let free = n - lead;
        let total = (q as u64).pow(free as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![0u32; n + 1];
            v[lead] = 1;
            for c in v.iter_mut().skip(lead + 1) {
                *c = (code % q as u64) as u32;
                code /= q as u64;
            }
            v
        })
    })
}

/// Sum of owned field elements.
pub fn total<F: Field>(f: &F, it: impl IntoIterator<Item = F::Elem>) -> F::Elem {
    it.into_iter().fold(f.zero(), |a, b| f.add(&a, &b))
}
