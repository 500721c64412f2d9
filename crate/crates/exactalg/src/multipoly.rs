//! Sparse multivariate polynomials with exponent vectors in lexicographic order.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::poly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly<E> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E: Clone + Eq> MultiPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant<F: Field<Elem = E>>(nvars: usize, c: E, f: &F) -> Self {
        Self::monomial(vec![0; nvars], c, f)
    }

    pub fn one<F: Field<Elem = E>>(nvars: usize, f: &F) -> Self {
        Self::constant(nvars, f.one(), f)
    }

    pub fn var<F: Field<Elem = E>>(nvars: usize, i: usize, f: &F) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, f.one(), f)
    }

    pub fn monomial<F: Field<Elem = E>>(exps: Vec<u32>, c: E, f: &F) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !f.is_zero(&c) {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<F: Field<Elem = E>>(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, E)>, f: &F) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c, f);
        }
        p
    }

    fn add_term<F: Field<Elem = E>>(&mut self, e: Vec<u32>, c: E, f: &F) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = f.add(v, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff<F: Field<Elem = E>>(&self, exps: &[u32], f: &F) -> E {
        self.terms.get(exps).cloned().unwrap_or_else(|| f.zero())
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Vec<u32>, &E)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// The common degree when every term has the same total degree; zero counts as homogeneous of any degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn constant_term<F: Field<Elem = E>>(&self, f: &F) -> E {
        self.coeff(&vec![0; self.nvars], f)
    }

    pub fn add<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone(), f);
        }
        r
    }

    pub fn sub<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), f.neg(c), f);
        }
        r
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect() }
    }

    pub fn scale<F: Field<Elem = E>>(&self, c: &E, f: &F) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), f.mul(v, c))).collect() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, other: &Self, f: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, f.mul(c1, c2), f);
            }
        }
        r
    }

    pub fn mul_monomial<F: Field<Elem = E>>(&self, exps: &[u32], c: &E, f: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            let e2: Vec<u32> = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            r.add_term(e2, f.mul(v, c), f);
        }
        r
    }

    pub fn pow<F: Field<Elem = E>>(&self, mut e: u32, f: &F) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, f);
            }
        }
        acc
    }

    pub fn eval<F: Field<Elem = E>>(&self, point: &[E], f: &F) -> E {
        assert_eq!(point.len(), self.nvars);
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`; all substitutes share one variable count.
    pub fn substitute<F: Field<Elem = E>>(&self, subs: &[MultiPoly<E>], f: &F) -> MultiPoly<E> {
        assert_eq!(subs.len(), self.nvars);
        let m = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<Vec<MultiPoly<E>>> = subs.iter().map(|s| vec![MultiPoly::one(m, f), s.clone()]).collect();
        let mut r = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone(), f);
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i], f);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize], f);
                }
            }
            r = r.add(&t, f);
        }
        r
    }

    /// Fixes variable `i` to `value`, keeping the variable count.
    pub fn specialize<F: Field<Elem = E>>(&self, i: usize, value: &E, f: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[i] = 0;
            r.add_term(e2, f.mul(c, &f.pow(value, e[i] as u64)), f);
        }
        r
    }

    pub fn partial<F: Field<Elem = E>>(&self, i: usize, f: &F) -> Self {
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, f.mul(c, &f.from_i64(e[i] as i64)), f);
            }
        }
        r
    }

    pub fn gradient<F: Field<Elem = E>>(&self, f: &F) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial(i, f)).collect()
    }

    pub fn map<E2: Clone + Eq, F2: Field<Elem = E2>>(&self, g: impl Fn(&E) -> E2, f2: &F2) -> MultiPoly<E2> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), g(c))), f2)
    }

    /// Coefficients with respect to variable `i`, low degree first.
    pub fn coefficients_in<F: Field<Elem = E>>(&self, i: usize, f: &F) -> Vec<MultiPoly<E>> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[i], 0) as usize;
            out[k].add_term(e2, c.clone(), f);
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Univariate view in variable `i`; `None` if another variable occurs.
    pub fn to_univariate<F: Field<Elem = E>>(&self, i: usize, f: &F) -> Option<UniPoly<E>> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut coeffs = vec![f.zero(); d + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                return None;
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs, f))
    }

    pub fn from_univariate<F: Field<Elem = E>>(u: &UniPoly<E>, nvars: usize, i: usize, f: &F) -> Self {
        MultiPoly::from_terms(
            nvars,
            u.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[i] = k as u32;
                (e, c.clone())
            }),
            f,
        )
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact<F: Field<Elem = E>>(&self, d: &Self, f: &F) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let (de, dinv) = (de.clone(), f.inv(dc)?);
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let te: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let tc = f.mul(rc, &dinv);
            r = r.sub(&d.mul_monomial(&te, &tc, f), f);
            q.add_term(te, tc, f);
        }
        Some(q)
    }

    /// Divides out the largest power of variable `i`, returning it.
    pub fn strip_variable(&self, i: usize) -> (Self, u32) {
        let k = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= k;
                (e2, c.clone())
            })
            .collect();
        (MultiPoly { nvars: self.nvars, terms }, k)
    }

    /// Homogenizes with a new last variable to degree `deg` (at least the total degree).
    pub fn homogenize(&self, deg: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                let s: u32 = e.iter().sum();
                assert!(s <= deg, "degree exceeds homogenization degree");
                e2.push(deg - s);
                (e2, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars + 1, terms }
    }

    /// Embeds into a ring with more variables, mapping variable `j` to `targets[j]`.
    pub fn relabel(&self, nvars: usize, targets: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = vec![0; nvars];
                for (j, &k) in e.iter().enumerate() {
                    e2[targets[j]] += k;
                }
                (e2, c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            let cs = f.format_elem(c);
            parts.push(match (mono.is_empty(), f.is_one(c)) {
                (true, _) => cs,
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", cs, mono.join("*")),
            });
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn exact_division_roundtrip() {
        let f = Gf::prime(11).unwrap();
        let x = MultiPoly::var(3, 0, &f);
        let y = MultiPoly::var(3, 1, &f);
        let z = MultiPoly::var(3, 2, &f);
        let a = x.mul(&y, &f).add(&z.pow(2, &f), &f).add(&MultiPoly::constant(3, 3, &f), &f);
        let b = x.sub(&y.scale(&4, &f), &f).add(&z, &f);
        let p = a.mul(&b, &f);
        assert_eq!(p.div_exact(&b, &f), Some(a.clone()));
        assert_eq!(p.add(&x, &f).div_exact(&b, &f), None);
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = Gf::prime(13).unwrap();
        let x = MultiPoly::var(2, 0, &f);
        let y = MultiPoly::var(2, 1, &f);
        let p = x.pow(3, &f).add(&x.mul(&y, &f).scale(&5, &f), &f);
        let t = MultiPoly::var(1, 0, &f);
        let subs = vec![t.add(&MultiPoly::one(1, &f), &f), t.pow(2, &f)];
        let q = p.substitute(&subs, &f);
        for v in 0..13u32 {
            let pt = [f.add(&v, &1), f.mul(&v, &v)];
            assert_eq!(q.eval(&[v], &f), p.eval(&pt, &f));
        }
    }
}
