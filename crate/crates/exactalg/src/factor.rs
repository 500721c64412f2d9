//! Squarefree decomposition and finite-field factorization
//! (distinct-degree plus Cantor–Zassenhaus equal-degree splitting).

use rand::RngCore;

use crate::field::Field;
use crate::poly::UniPoly;

/// Decomposes `f` into pairwise coprime squarefree monic factors with distinct
/// multiplicities. The product of `factor^mult` equals `f` up to a unit.
pub fn squarefree_decompose<F: Field>(f: &UniPoly<F::Elem>, fld: &F) -> Vec<(UniPoly<F::Elem>, u32)> {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    let mut out = Vec::new();
    sqf_rec(&f.monic(fld), fld, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    // merge equal multiplicities produced by the p-th root branch
    let mut merged: Vec<(UniPoly<F::Elem>, u32)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *mm == m => *h = h.mul(&g, fld),
            _ => merged.push((g, m)),
        }
    }
    merged
}

fn sqf_rec<F: Field>(f: &UniPoly<F::Elem>, fld: &F, scale: u32, out: &mut Vec<(UniPoly<F::Elem>, u32)>) {
    if f.is_constant() {
        return;
    }
    let df = f.derivative(fld);
    let mut c = f.gcd(&df, fld);
    let mut w = f.div_exact(&c, fld).unwrap();
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c, fld);
        let z = w.div_exact(&y, fld).unwrap();
        if !z.is_constant() {
            out.push((z.monic(fld), i * scale));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, fld).unwrap();
    }
    if !c.is_constant() {
        // c is a polynomial in x^p
        let p = fld.characteristic() as usize;
        assert!(p > 0, "residual p-th power content in characteristic zero");
        let root: Vec<F::Elem> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| fld.pth_root(a))
            .collect();
        let r = UniPoly::from_coeffs(root, fld);
        sqf_rec(&r.monic(fld), fld, scale * p as u32, out);
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial over a finite
/// field: returns `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree<F: Field>(f: &UniPoly<F::Elem>, fld: &F) -> Vec<(UniPoly<F::Elem>, usize)> {
    let q = fld.order().expect("finite field") as u128;
    let x = UniPoly::x(fld);
    let mut rest = f.monic(fld);
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            out.push((rest.clone(), deg));
            break;
        }
        h = h.pow_mod(q, &rest, fld);
        let g = rest.gcd(&h.sub(&x, fld), fld);
        if !g.is_constant() {
            rest = rest.div_exact(&g, fld).unwrap();
            h = h.rem(&rest, fld);
            out.push((g, d));
        }
    }
    out
}

/// Splits a squarefree monic product of irreducible factors of degree `d`.
pub fn equal_degree<F: Field>(
    f: &UniPoly<F::Elem>,
    d: usize,
    fld: &F,
    rng: &mut dyn RngCore,
) -> Vec<UniPoly<F::Elem>> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic(fld)];
    }
    let q = fld.order().expect("finite field") as u128;
    let p = fld.characteristic();
    loop {
        // random polynomial of degree < n
        let a = UniPoly::from_coeffs((0..n).map(|_| fld.random_elem(rng)).collect(), fld);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace map of F_{q^d}
            let k = (q.trailing_zeros() as usize) * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..k {
                t = t.mul(&t, fld).rem(f, fld);
                acc = acc.add(&t, fld);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - 1) / 2;
            a.pow_mod(e, f, fld).sub(&UniPoly::one(fld), fld)
        };
        let g = f.gcd(&b, fld);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let h = f.div_exact(&g, fld).unwrap();
                let mut out = equal_degree(&g, d, fld, rng);
                out.extend(equal_degree(&h, d, fld, rng));
                return out;
            }
        }
    }
}

/// Full factorization into monic irreducibles with multiplicity, sorted.
pub fn factor<F: Field>(f: &UniPoly<F::Elem>, fld: &F, rng: &mut dyn RngCore) -> Vec<(UniPoly<F::Elem>, u32)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decompose(f, fld) {
        for (h, d) in distinct_degree(&g, fld) {
            for irr in equal_degree(&h, d, fld, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort();
    out
}

pub fn is_irreducible<F: Field>(f: &UniPoly<F::Elem>, fld: &F) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let sqf = squarefree_decompose(f, fld);
    if sqf.len() != 1 || sqf[0].1 != 1 {
        return false;
    }
    let dd = distinct_degree(f, fld);
    dd.len() == 1 && dd[0].1 == n
}

/// Distinct roots of `f` in the field itself (no multiplicities).
pub fn roots_in_field<F: Field>(f: &UniPoly<F::Elem>, fld: &F, rng: &mut dyn RngCore) -> Vec<F::Elem> {
    if f.is_constant() {
        return Vec::new();
    }
    let q = fld.order().expect("finite field") as u128;
    let f = f.monic(fld);
    let x = UniPoly::x(fld);
    let g = f.gcd(&x.pow_mod(q, &f, fld).sub(&x, fld), fld);
    let mut roots: Vec<F::Elem> = equal_degree(&g, 1, fld, rng)
        .into_iter()
        .map(|l| fld.neg(&l.coeffs()[0]))
        .collect();
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::poly::from_roots;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn squarefree_example() {
        let f = Gf::prime(7).unwrap();
        // (t-1)^2 (t+1)
        let poly = from_roots(&[1, 1, 6], &f);
        let d = squarefree_decompose(&poly, &f);
        assert_eq!(d, vec![(from_roots(&[6], &f), 1), (from_roots(&[1], &f), 2)]);
    }

    #[test]
    fn squarefree_handles_pth_powers() {
        let f = Gf::prime(3).unwrap();
        // (t+1)^3 * t  = t^4 + t over F_3 ... plus (t-1)^6
        let a = from_roots(&[2, 2, 2, 0], &f);
        let b = from_roots(&[1; 6], &f);
        let poly = a.mul(&b, &f);
        let d = squarefree_decompose(&poly, &f);
        assert_eq!(
            d,
            vec![(from_roots(&[0], &f), 1), (from_roots(&[2], &f), 3), (from_roots(&[1], &f), 6)]
        );
    }

    #[test]
    fn cube_roots_of_unity_mod_7() {
        let f = Gf::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t3m1 = UniPoly::from_coeffs(vec![6, 0, 0, 1], &f);
        assert_eq!(roots_in_field(&t3m1, &f, &mut rng), vec![1, 2, 4]);
        let t2p1 = UniPoly::from_coeffs(vec![1, 0, 1], &f);
        assert!(roots_in_field(&t2p1, &f, &mut rng).is_empty());
        assert!(is_irreducible(&t2p1, &f));
    }

    #[test]
    fn factor_recovers_degrees() {
        let f = Gf::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // (t^2 + 2)(t - 1)^2 (t^3 + t + 1)
        let a = UniPoly::from_coeffs(vec![2, 0, 1], &f);
        let b = from_roots(&[1, 1], &f);
        let c = UniPoly::from_coeffs(vec![1, 1, 0, 1], &f);
        let poly = a.mul(&b, &f).mul(&c, &f);
        let fac = factor(&poly, &f, &mut rng);
        let degs: Vec<(usize, u32)> = fac.iter().map(|(g, m)| (g.degree().unwrap(), *m)).collect();
        let mut sorted = degs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![(1, 2), (2, 1), (3, 1)]);
    }
}
