//! Rational roots of polynomials over `Q` by p-adic lifting and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{bigint_mod_u32, Field, Rationals};
use crate::gf::{is_prime, Gf};
use crate::poly::UniPoly;

/// Clears denominators and content, returning integer coefficients low-first.
pub fn primitive_integer_part(f: &UniPoly<BigRational>) -> Vec<BigInt> {
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

fn eval_mod(h: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    h.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Finds `a/b` with `a = b r mod m`, `|a| <= num_bound`, `0 < b <= den_bound`.
fn reconstruct(r: &BigInt, m: &BigInt, num_bound: &BigInt, den_bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > den_bound {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}

/// Distinct rational roots of a nonzero polynomial, sorted.
pub fn rational_roots(f: &UniPoly<BigRational>) -> Vec<BigRational> {
    let q = Rationals;
    if f.is_zero() || f.is_constant() {
        return Vec::new();
    }
    let sqf = f.div_exact(&f.gcd(&f.derivative(&q), &q), &q).expect("gcd divides");
    let mut h = primitive_integer_part(&sqf);
    let mut roots = Vec::new();
    if h[0].is_zero() {
        roots.push(BigRational::zero());
        h.remove(0);
    }
    if h.len() >= 2 {
        for r in nonzero_roots(&h) {
            if q.is_zero(&sqf.eval(&r, &q)) {
                roots.push(r);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn nonzero_roots(h: &[BigInt]) -> Vec<BigRational> {
    let deg = h.len() - 1;
    let bound = BigInt::from(2) * h[0].abs() * h[deg].abs() + 1;
    let mut p: u32 = 101;
    let (fld, hp) = loop {
        p += 2;
        if !is_prime(p as u64) || bigint_mod_u32(&h[deg], p) == 0 {
            continue;
        }
        let fld = Gf::prime(p).expect("small prime");
        let hp = UniPoly::from_coeffs(h.iter().map(|c| bigint_mod_u32(c, p)).collect(), &fld);
        if hp.gcd(&hp.derivative(&fld), &fld).is_constant() {
            break (fld, hp);
        }
    };
    let dh: Vec<BigInt> = h.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(p as u64);
    let mut out = Vec::new();
    for r0 in crate::factor::roots_in_field(&hp, &fld, &mut rng) {
        let mut m = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while m <= bound {
            m = &m * &m;
            let Some(inv) = inverse_mod(&eval_mod(&dh, &r, &m), &m) else { break };
            r = (&r - eval_mod(h, &r, &m) * inv).mod_floor(&m);
        }
        if let Some((a, b)) = reconstruct(&r, &m, &h[0].abs(), &h[deg].abs()) {
            out.push(BigRational::new(a, b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn finds_fractional_roots() {
        let q = Rationals;
        let f = crate::poly::from_roots(&[rat(3, 7), rat(-5, 2), rat(0, 1), rat(3, 7)], &q);
        let g = f.mul(&UniPoly::from_coeffs(vec![rat(2, 1), rat(0, 1), rat(1, 1)], &q), &q);
        assert_eq!(rational_roots(&g), vec![rat(-5, 2), rat(0, 1), rat(3, 7)]);
    }

    #[test]
    fn irreducible_quadratic_has_none() {
        let q = Rationals;
        let f = UniPoly::from_coeffs(vec![rat(-2, 1), rat(0, 1), rat(1, 1)], &q);
        assert!(rational_roots(&f).is_empty());
    }

    #[test]
    fn large_roots() {
        let q = Rationals;
        let f = crate::poly::from_roots(&[rat(123456789, 1000003), rat(-99991, 17)], &q);
        assert_eq!(rational_roots(&f), vec![rat(-99991, 17), rat(123456789, 1000003)]);
    }
}
