//! Extension towers `F_p ⊂ F_{p^2} ⊂ ... ⊂ F_{p^K}` standing in for an algebraic
//! closure with an explicit budget, and the [`Ground`] abstraction that lets
//! geometric code run unchanged over a finite tower or over the rationals.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgError, Result};
use crate::factor::{distinct_degree, equal_degree, is_irreducible, roots_in_field, squarefree_decompose};
use crate::field::{Field, Rationals};
use crate::gf::Gf;
use crate::poly::UniPoly;
use crate::qroots::rational_roots;

/// One root of a univariate polynomial, stored at its smallest field level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root<E> {
    pub level: u32,
    pub value: E,
    pub multiplicity: u32,
}

/// Roots found within a tower budget, plus the part of the polynomial that
/// does not split within it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootMultiset<E> {
    pub roots: Vec<Root<E>>,
    pub degree: usize,
    /// `(degree of an unsplit factor over the input level, multiplicity)`.
    pub unsplit: Vec<(usize, u32)>,
}

impl<E> RootMultiset<E> {
    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn fully_split(&self) -> bool {
        self.unsplit.is_empty()
    }

    pub fn unsplit_degree(&self) -> usize {
        self.unsplit.iter().map(|(d, m)| d * *m as usize).sum()
    }
}

/// A ground ring with (possibly trivial) extension levels.
pub trait Ground: Clone + fmt::Debug + Send + Sync {
    type F: Field;

    fn level(&self, k: u32) -> Result<Self::F>;
    fn budget(&self) -> u32;
    fn characteristic(&self) -> u64;
    /// Embeds an element of level `from` into level `to`; `from` must divide `to`.
    fn embed(&self, x: &<Self::F as Field>::Elem, from: u32, to: u32) -> Result<<Self::F as Field>::Elem>;
    /// Smallest level dividing `at` that contains `x`.
    fn min_level(&self, x: &<Self::F as Field>::Elem, at: u32) -> u32;
    /// Preimage of `x` (at level `at`) in level `to`, if it lies there.
    fn descend(&self, x: &<Self::F as Field>::Elem, at: u32, to: u32) -> Option<<Self::F as Field>::Elem>;
    /// All roots of `f` (coefficients at level `at`) in levels up to `max_level`.
    fn roots(
        &self,
        f: &UniPoly<<Self::F as Field>::Elem>,
        at: u32,
        max_level: u32,
    ) -> Result<RootMultiset<<Self::F as Field>::Elem>>;
    fn seed(&self) -> u64;

    /// Smallest level containing both levels.
    fn join(&self, a: u32, b: u32) -> u32 {
        num_integer::lcm(a, b)
    }

    fn embed_poly(
        &self,
        f: &UniPoly<<Self::F as Field>::Elem>,
        from: u32,
        to: u32,
    ) -> Result<UniPoly<<Self::F as Field>::Elem>> {
        let target = self.level(to)?;
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| self.embed(c, from, to))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::from_coeffs(coeffs, &target))
    }
}

struct Embedding {
    forward: Vec<u32>,
    backward: HashMap<u32, u32>,
}

struct TowerInner {
    p: u32,
    budget: u32,
    seed: u64,
    levels: Vec<OnceLock<Result<Gf>>>,
    embeddings: Mutex<HashMap<(u32, u32), Arc<Embedding>>>,
}

/// A finite-field tower over `F_p`, levels built lazily and reproducibly from a seed.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerInner>);

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(p={}, budget={}, seed={})", self.0.p, self.0.budget, self.0.seed)
    }
}

impl FieldTower {
    pub fn new(p: u32, budget: u32, seed: u64) -> Result<FieldTower> {
        if budget == 0 {
            return Err(AlgError::InvalidArgument("tower budget must be positive".into()));
        }
        let base = Gf::prime(p)?;
        let levels: Vec<OnceLock<Result<Gf>>> = (0..budget).map(|_| OnceLock::new()).collect();
        let _ = levels[0].set(Ok(base));
        Ok(FieldTower(Arc::new(TowerInner {
            p,
            budget,
            seed,
            levels,
            embeddings: Mutex::new(HashMap::new()),
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn base(&self) -> Gf {
        self.level(1).expect("level 1 always exists")
    }

    /// The defining polynomial of level `k` over `F_p`, low degree first.
    pub fn defining_polynomial(&self, k: u32) -> Result<Vec<u32>> {
        Ok(self.level(k)?.modulus().to_vec())
    }

    fn build_level(&self, k: u32) -> Result<Gf> {
        let p = self.0.p;
        let base = self.base();
        let mut rng = ChaCha8Rng::seed_from_u64(self.0.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        loop {
            let mut coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            coeffs.push(1);
            let poly = UniPoly::from_coeffs(coeffs.clone(), &base);
            if !is_irreducible(&poly, &base) {
                continue;
            }
            match Gf::new(p, coeffs) {
                Ok(f) => return Ok(f),
                Err(AlgError::FieldTooLarge { p, k }) => return Err(AlgError::FieldTooLarge { p, k }),
                Err(_) => continue,
            }
        }
    }

    fn embedding(&self, from: u32, to: u32) -> Result<Arc<Embedding>> {
        if let Some(e) = self.0.embeddings.lock().unwrap().get(&(from, to)) {
            return Ok(e.clone());
        }
        let src = self.level(from)?;
        let dst = self.level(to)?;
        let forward: Vec<u32> = if from == to {
            src.elements().collect()
        } else if from == 1 {
            // prime-field constants have the same encoding at every level
            src.elements().collect()
        } else if let Some(mid) = (from + 1..to).find(|m| m % from == 0 && to.is_multiple_of(*m)) {
            let a = self.embedding(from, mid)?;
            let b = self.embedding(mid, to)?;
            a.forward.iter().map(|&x| b.forward[x as usize]).collect()
        } else {
            let modulus = UniPoly::from_coeffs(src.modulus().to_vec(), &dst);
            let mut rng = ChaCha8Rng::seed_from_u64(self.0.seed ^ 0xE3B);
            let roots = roots_in_field(&modulus, &dst, &mut rng);
            let r = *roots.first().ok_or_else(|| {
                AlgError::InvalidArgument(format!("level {from} does not embed in level {to}"))
            })?;
            src.elements()
                .map(|x| {
                    let digits = src.digits(x);
                    digits
                        .iter()
                        .rev()
                        .fold(0u32, |acc, &d| dst.add(&dst.mul(&acc, &r), &d))
                })
                .collect()
        };
        let backward = forward.iter().enumerate().map(|(i, &y)| (y, i as u32)).collect();
        let e = Arc::new(Embedding { forward, backward });
        self.0.embeddings.lock().unwrap().insert((from, to), e.clone());
        Ok(e)
    }

    fn check_levels(&self, from: u32, to: u32) -> Result<()> {
        let requested = from.max(to);
        if requested > self.0.budget || from == 0 {
            return Err(AlgError::Budget { requested, budget: self.0.budget });
        }
        if !to.is_multiple_of(from) {
            return Err(AlgError::InvalidArgument(format!("level {from} does not divide level {to}")));
        }
        Ok(())
    }
}

impl Ground for FieldTower {
    type F = Gf;

    fn level(&self, k: u32) -> Result<Gf> {
        if k == 0 || k > self.0.budget {
            return Err(AlgError::Budget { requested: k, budget: self.0.budget });
        }
        self.0.levels[(k - 1) as usize]
            .get_or_init(|| self.build_level(k))
            .clone()
    }

    fn budget(&self) -> u32 {
        self.0.budget
    }

    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }

    fn seed(&self) -> u64 {
        self.0.seed
    }

    fn embed(&self, x: &u32, from: u32, to: u32) -> Result<u32> {
        if from == to || from == 1 {
            self.check_levels(from, to)?;
            return Ok(*x);
        }
        self.check_levels(from, to)?;
        Ok(self.embedding(from, to)?.forward[*x as usize])
    }

    fn min_level(&self, x: &u32, at: u32) -> u32 {
        let f = self.level(at).expect("level within budget");
        (1..=at)
            .filter(|j| at.is_multiple_of(*j))
            .find(|&j| f.in_subfield(*x, j))
            .unwrap_or(at)
    }

    fn descend(&self, x: &u32, at: u32, to: u32) -> Option<u32> {
        if at == to {
            return Some(*x);
        }
        self.check_levels(to, at).ok()?;
        if to == 1 {
            return (*x < self.0.p).then_some(*x);
        }
        self.embedding(to, at).ok()?.backward.get(x).copied()
    }

    fn roots(&self, f: &UniPoly<u32>, at: u32, max_level: u32) -> Result<RootMultiset<u32>> {
        if max_level > self.0.budget {
            return Err(AlgError::Budget { requested: max_level, budget: self.0.budget });
        }
        if f.is_zero() {
            return Err(AlgError::InvalidArgument("roots of the zero polynomial".into()));
        }
        let fld = self.level(at)?;
        let degree = f.degree().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(self.0.seed ^ 0x5EED);
        let mut roots = Vec::new();
        let mut unsplit = Vec::new();
        for (part, mult) in squarefree_decompose(f, &fld) {
            for (g, d) in distinct_degree(&part, &fld) {
                let lvl = at * d as u32;
                if lvl > max_level {
                    for _ in 0..(g.degree().unwrap() / d) {
                        unsplit.push((d, mult));
                    }
                    continue;
                }
                let ext = self.level(lvl)?;
                let g_ext = self.embed_poly(&g, at, lvl)?;
                for lin in equal_degree(&g_ext, 1, &ext, &mut rng) {
                    let v = ext.neg(&lin.coeffs()[0]);
                    let m = self.min_level(&v, lvl);
                    let value = self.descend(&v, lvl, m).expect("descent to containing subfield");
                    roots.push(Root { level: m, value, multiplicity: mult });
                }
            }
        }
        roots.sort();
        unsplit.sort();
        Ok(RootMultiset { roots, degree, unsplit })
    }
}

/// Roots of a level-1 polynomial in levels up to `max_level`.
pub fn roots_in_tower(f: &UniPoly<u32>, tower: &FieldTower, max_level: u32) -> Result<RootMultiset<u32>> {
    tower.roots(f, 1, max_level)
}

/// The rationals as a ground with no extension levels.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalGround;

impl Ground for RationalGround {
    type F = Rationals;

    fn level(&self, k: u32) -> Result<Rationals> {
        if k == 1 {
            Ok(Rationals)
        } else {
            Err(AlgError::Budget { requested: k, budget: 1 })
        }
    }
    fn budget(&self) -> u32 {
        1
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn seed(&self) -> u64 {
        0
    }
    fn embed(&self, x: &BigRational, from: u32, to: u32) -> Result<BigRational> {
        if from == 1 && to == 1 {
            Ok(x.clone())
        } else {
            Err(AlgError::Budget { requested: from.max(to), budget: 1 })
        }
    }
    fn min_level(&self, _x: &BigRational, _at: u32) -> u32 {
        1
    }
    fn descend(&self, x: &BigRational, at: u32, to: u32) -> Option<BigRational> {
        (at == 1 && to == 1).then(|| x.clone())
    }
    fn roots(&self, f: &UniPoly<BigRational>, at: u32, _max_level: u32) -> Result<RootMultiset<BigRational>> {
        if at != 1 {
            return Err(AlgError::Budget { requested: at, budget: 1 });
        }
        if f.is_zero() {
            return Err(AlgError::InvalidArgument("roots of the zero polynomial".into()));
        }
        let degree = f.degree().unwrap();
        let mut roots = Vec::new();
        let mut unsplit = Vec::new();
        for (part, mult) in squarefree_decompose(f, &Rationals) {
            let rs = rational_roots(&part);
            let rest = part.degree().unwrap() - rs.len();
            if rest > 0 {
                unsplit.push((rest, mult));
            }
            roots.extend(rs.into_iter().map(|value| Root { level: 1, value, multiplicity: mult }));
        }
        roots.sort();
        unsplit.sort();
        Ok(RootMultiset { roots, degree, unsplit })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = FieldTower::new(7, 4, 42).unwrap();
        let b = FieldTower::new(7, 4, 42).unwrap();
        for k in 1..=4 {
            assert_eq!(a.defining_polynomial(k).unwrap(), b.defining_polynomial(k).unwrap());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let t = FieldTower::new(7, 3, 0).unwrap();
        assert!(matches!(t.level(4), Err(AlgError::Budget { .. })));
        let f = UniPoly::from_coeffs(vec![1, 0, 1], &t.base());
        assert!(matches!(t.roots(&f, 1, 5), Err(AlgError::Budget { .. })));
    }

    #[test]
    fn t2_plus_1_over_f7_needs_level_two() {
        let t = FieldTower::new(7, 6, 1).unwrap();
        let f = UniPoly::from_coeffs(vec![1, 0, 1], &t.base());
        let lvl1 = t.roots(&f, 1, 1).unwrap();
        assert!(lvl1.roots.is_empty());
        assert_eq!(lvl1.unsplit, vec![(2, 1)]);
        let lvl2 = t.roots(&f, 1, 2).unwrap();
        assert_eq!(lvl2.roots.len(), 2);
        assert!(lvl2.roots.iter().all(|r| r.level == 2));
        let f2 = t.level(2).unwrap();
        for r in &lvl2.roots {
            let fe = t.embed_poly(&f, 1, 2).unwrap();
            assert_eq!(fe.eval(&r.value, &f2), 0);
        }
    }

    #[test]
    fn triple_root_multiplicity() {
        let t = FieldTower::new(7, 2, 1).unwrap();
        let f = crate::poly::from_roots(&[3, 3, 3], &t.base());
        let r = t.roots(&f, 1, 1).unwrap();
        assert_eq!(r.roots, vec![Root { level: 1, value: 3, multiplicity: 3 }]);
        assert_eq!(r.total_multiplicity(), 3);
    }
}
