//! The coefficient-field abstraction shared by every polynomial routine.
//!
//! Fields are context objects: elements carry no reference to their field,
//! so every operation goes through the field value.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;

pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// Inverse Frobenius; only meaningful in positive characteristic.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// The `i`-th element in a fixed enumeration of a finite field.
    fn element(&self, _i: u64) -> Option<Self::Elem> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The field of rational numbers with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> BigRational {
        // small integers are enough for genericity choices
        let v = (rng.next_u32() % 61) as i64 - 30;
        self.from_i64(v)
    }
    fn pth_root(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// Exact conversion of a rational to `i64`, if it is an integer in range.
pub fn rational_to_i64(a: &BigRational) -> Option<i64> {
    if a.denom().is_one() {
        a.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn bigint_mod_u32(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = v % &m;
    let r = if r.is_negative() { r + m } else { r };
    r.to_u32().expect("residue fits")
}
