//! Table-driven arithmetic in a finite field `F_{p^k}`.
//!
//! An element is stored as the integer `sum c_i p^i` of its coordinates in the
//! power basis `1, x, .., x^{k-1}` of `F_p[x]/(m)`. The defining polynomial is
//! required to be primitive so that `x` generates the multiplicative group and
//! multiplication goes through discrete-log tables.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::RngCore;

use crate::error::{AlgError, Result};
use crate::field::{bigint_mod_u32, Field};

/// Largest field order for which tables are built.
pub const MAX_TABLE_ORDER: u64 = 1 << 25;

struct GfInner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for Gf {}

impl Gf {
    /// Builds the field `F_p[x]/(modulus)`; `modulus` is monic, low degree first.
    /// Fails unless `x` has multiplicative order `p^k - 1`.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Gf> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(AlgError::InvalidArgument("modulus must be monic of degree >= 1".into()));
        }
        if !is_prime(p as u64) {
            return Err(AlgError::InvalidArgument(format!("{p} is not prime")));
        }
        let k = (modulus.len() - 1) as u32;
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_TABLE_ORDER {
            return Err(AlgError::FieldTooLarge { p, k });
        }
        let q = q64 as u32;
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut digits = vec![0u32; k as usize];
        digits[0] = 1;
        for i in 0..(q - 1) {
            let v = encode(&digits, p);
            if log[v as usize] != u32::MAX {
                return Err(AlgError::InvalidArgument("modulus is not primitive".into()));
            }
            log[v as usize] = i;
            exp.push(v);
            mul_by_x(&mut digits, &modulus, p);
        }
        if encode(&digits, p) != 1 {
            return Err(AlgError::InvalidArgument("modulus is not primitive".into()));
        }
        Ok(Gf(Arc::new(GfInner { p, k, q, modulus, exp, log })))
    }

    /// The prime field `F_p`, generated by its least primitive root.
    pub fn prime(p: u32) -> Result<Gf> {
        if !is_prime(p as u64) {
            return Err(AlgError::InvalidArgument(format!("{p} is not prime")));
        }
        if p == 2 {
            return Gf::new(2, vec![1, 1]);
        }
        for g in 2..p {
            if let Ok(f) = Gf::new(p, vec![p - g, 1]) {
                return Ok(f);
            }
        }
        unreachable!("every prime field has a primitive root")
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The class of `x`, a generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.0.exp[1 % self.0.exp.len()]
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let mut v = a;
        (0..self.0.k)
            .map(|_| {
                let d = v % self.0.p;
                v /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        encode(digits, self.0.p)
    }

    /// Discrete log base `x`; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.log[a as usize])
        }
    }

    pub fn exp(&self, i: u64) -> u32 {
        self.0.exp[(i % (self.0.q as u64 - 1)) as usize]
    }

    /// Whether `a` lies in the subfield of order `p^j`.
    pub fn in_subfield(&self, a: u32, j: u32) -> bool {
        if !self.0.k.is_multiple_of(j) {
            return false;
        }
        match self.log(a) {
            None => true,
            Some(l) => {
                let qj = (self.0.p as u64).pow(j);
                (l as u64 * qj) % (self.0.q as u64 - 1) == l as u64
            }
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }
}

fn encode(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

fn mul_by_x(digits: &mut [u32], modulus: &[u32], p: u32) {
    let k = digits.len();
    let top = digits[k - 1];
    for i in (1..k).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    if top != 0 {
        for i in 0..k {
            // subtract top * modulus[i]
            let sub = (top as u64 * modulus[i] as u64 % p as u64) as u32;
            digits[i] = (digits[i] + p - sub) % p;
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Gf {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }
    fn from_bigint(&self, v: &BigInt) -> u32 {
        bigint_mod_u32(v, self.0.p)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        let (mut x, mut y) = (*a, *b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.k {
            let d = (x % p + y % p) % p;
            out += d * place;
            place = place.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        out
    }
    fn neg(&self, a: &u32) -> u32 {
        let p = self.0.p;
        if self.0.k == 1 {
            return if *a == 0 { 0 } else { p - a };
        }
        let mut x = *a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.k {
            let d = x % p;
            out += ((p - d) % p) * place;
            place = place.wrapping_mul(p);
            x /= p;
        }
        out
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        let n = self.0.q - 1;
        let s = self.0.log[*a as usize] as u64 + self.0.log[*b as usize] as u64;
        self.0.exp[(s % n as u64) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let l = self.0.log[*a as usize];
        Some(self.0.exp[((n - l) % n) as usize])
    }
    fn element(&self, i: u64) -> Option<u32> {
        (i < self.0.q as u64).then_some(i as u32)
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.0.p as u64
    }
    fn order(&self) -> Option<u64> {
        Some(self.0.q as u64)
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u32 {
        rng.next_u32() % self.0.q
    }
    fn pth_root(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[*a as usize] as u64;
        let e = (self.0.q / self.0.p) as u64;
        self.0.exp[((l * e) % n) as usize]
    }
    fn pow(&self, a: &u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if *a == 0 {
            return 0;
        }
        let n = (self.0.q - 1) as u64;
        let l = self.0.log[*a as usize] as u64;
        self.0.exp[((l as u128 * e as u128) % n as u128) as usize]
    }
    fn format_elem(&self, a: &u32) -> String {
        if self.0.k == 1 {
            a.to_string()
        } else {
            format!("{:?}", self.digits(*a))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Gf::prime(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.neg(&2), 5);
        assert_eq!(f.pow(&2, 3), 1);
    }

    #[test]
    fn quadratic_extension_of_f7() {
        // x^2 + x + 3 is primitive over F_7
        let f = Gf::new(7, vec![3, 1, 1]).unwrap();
        assert_eq!(f.q(), 49);
        let x = f.generator();
        assert_eq!(f.digits(x), vec![0, 1]);
        for a in 1..49u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert!(f.in_subfield(3, 1));
        assert!(!f.in_subfield(x, 1));
    }

    #[test]
    fn non_primitive_modulus_rejected() {
        // x^2 + 1 is irreducible over F_7 but x has order 4
        assert!(Gf::new(7, vec![1, 0, 1]).is_err());
    }
}
