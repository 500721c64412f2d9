//! Dense univariate polynomials over a [`Field`].

use crate::field::Field;

/// Coefficients low degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + Eq> UniPoly<E> {
    pub fn from_coeffs<F: Field<Elem = E>>(mut coeffs: Vec<E>, f: &F) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant<F: Field<Elem = E>>(c: E, f: &F) -> Self {
        Self::from_coeffs(vec![c], f)
    }

    pub fn one<F: Field<Elem = E>>(f: &F) -> Self {
        Self::constant(f.one(), f)
    }

    /// The monomial `c * x^n`.
    pub fn monomial<F: Field<Elem = E>>(c: E, n: usize, f: &F) -> Self {
        let mut v = vec![f.zero(); n + 1];
        v[n] = c;
        Self::from_coeffs(v, f)
    }

    pub fn x<F: Field<Elem = E>>(f: &F) -> Self {
        Self::monomial(f.one(), 1, f)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff<F: Field<Elem = E>>(&self, i: usize, f: &F) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest power of `x` with a nonzero coefficient.
    pub fn valuation<F: Field<Elem = E>>(&self, f: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !f.is_zero(c))
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.add(&self.coeff(i, f), &other.coeff(i, f)))
            .collect();
        Self::from_coeffs(v, f)
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.sub(&self.coeff(i, f), &other.coeff(i, f)))
            .collect();
        Self::from_coeffs(v, f)
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| f.mul(a, c)).collect(), f)
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Self::from_coeffs(v, f)
    }

    pub fn pow<F: Field<Elem = E>>(&self, mut e: u64, f: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = f.inv(d.lc().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(&r[i], &inv_lc);
            if f.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = f.sub(&r[idx], &f.mul(&c, dj));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q, f), Self::from_coeffs(r, f))
    }

    pub fn rem<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Self {
        self.divrem(d, f).1
    }

    pub fn div_exact<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Option<Self> {
        let (q, r) = self.divrem(d, f);
        r.is_zero().then_some(q)
    }

    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(lc) => self.scale(&f.inv(lc).unwrap(), f),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative<F: Field<Elem = E>>(&self, f: &F) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(v, f)
    }

    pub fn eval<F: Field<Elem = E>>(&self, x: &E, f: &F) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(g(x))`.
    pub fn compose<F: Field<Elem = E>>(&self, g: &Self, f: &F) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(g, f).add(&Self::constant(c.clone(), f), f)
        })
    }

    /// `self^e mod m`.
    pub fn pow_mod<F: Field<Elem = E>>(&self, mut e: u128, m: &Self, f: &F) -> Self {
        let mut base = self.rem(m, f);
        let mut acc = Self::one(f).rem(m, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f);
            }
            base = base.mul(&base, f).rem(m, f);
            e >>= 1;
        }
        acc
    }

    /// Coefficient-wise image under a map into another field.
    pub fn map<E2: Clone + Eq, F2: Field<Elem = E2>>(&self, g: impl Fn(&E) -> E2, f2: &F2) -> UniPoly<E2> {
        UniPoly::from_coeffs(self.coeffs.iter().map(g).collect(), f2)
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| match i {
                0 => f.format_elem(c),
                1 => format!("{}*t", f.format_elem(c)),
                _ => format!("{}*t^{}", f.format_elem(c), i),
            })
            .collect();
        terms.join(" + ")
    }
}

/// Product of `(x - r)` over the given roots.
pub fn from_roots<F: Field>(roots: &[F::Elem], f: &F) -> UniPoly<F::Elem> {
    roots.iter().fold(UniPoly::one(f), |acc, r| {
        acc.mul(&UniPoly::from_coeffs(vec![f.neg(r), f.one()], f), f)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn divrem_reconstructs() {
        let f = Gf::prime(7).unwrap();
        let a = UniPoly::from_coeffs(vec![1, 2, 3, 4, 5], &f);
        let b = UniPoly::from_coeffs(vec![3, 0, 1], &f);
        let (q, r) = a.divrem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_products() {
        let f = Gf::prime(11).unwrap();
        let a = from_roots(&[1, 2, 3], &f);
        let b = from_roots(&[2, 3, 7], &f);
        assert_eq!(a.gcd(&b, &f), from_roots(&[2, 3], &f));
    }
}
