//! Resultants: univariate over a field, and multivariate by fraction-free elimination.

use crate::error::{AlgError, Result};
use crate::field::Field;
use crate::multipoly::MultiPoly;
use crate::poly::UniPoly;

/// `Res(f, g)` for the actual degrees; zero when either input is zero.
pub fn resultant<F: Field>(f: &UniPoly<F::Elem>, g: &UniPoly<F::Elem>, fld: &F) -> F::Elem {
    let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
        return fld.zero();
    };
    if n == 0 {
        return fld.pow(g.lc().unwrap(), m as u64);
    }
    if m == 0 {
        return fld.pow(f.lc().unwrap(), n as u64);
    }
    let sign = if (m * n) % 2 == 1 { fld.neg(&fld.one()) } else { fld.one() };
    let r = f.rem(g, fld);
    let Some(k) = r.degree() else {
        return fld.zero();
    };
    let tail = resultant(g, &r, fld);
    fld.mul(&sign, &fld.mul(&fld.pow(g.lc().unwrap(), (m - k) as u64), &tail))
}

/// Resultant with formal degrees `m >= deg f`, `n >= deg g`, i.e. of the binary
/// forms obtained by homogenizing to those degrees.
pub fn resultant_formal<F: Field>(f: &UniPoly<F::Elem>, m: usize, g: &UniPoly<F::Elem>, n: usize, fld: &F) -> F::Elem {
    let df = f.degree();
    let dg = g.degree();
    match (df, dg) {
        (None, _) | (_, None) => return fld.zero(),
        _ => {}
    }
    let (df, dg) = (df.unwrap(), dg.unwrap());
    assert!(df <= m && dg <= n, "formal degree below actual degree");
    if df < m && dg < n {
        return fld.zero();
    }
    if df < m {
        // Res_{m,n}(f,g) = (-1)^{n(m-df)} lc(g)^{m-df} Res_{df,n}(f,g)
        let s = if (n * (m - df)) % 2 == 1 { fld.neg(&fld.one()) } else { fld.one() };
        return fld.mul(&s, &fld.mul(&fld.pow(g.lc().unwrap(), (m - df) as u64), &resultant(f, g, fld)));
    }
    if dg < n {
        let s = if (m * n + m * dg) % 2 == 1 { fld.neg(&fld.one()) } else { fld.one() };
        // Res_{m,n}(f,g) = (-1)^{mn} Res_{n,m}(g,f) and Res_{dg,m}(g,f) = (-1)^{m dg} Res_{m,dg}(f,g)
        return fld.mul(&s, &fld.mul(&fld.pow(f.lc().unwrap(), (n - dg) as u64), &resultant(f, g, fld)));
    }
    resultant(f, g, fld)
}

/// Sylvester matrix of `f` (formal degree `m`) and `g` (formal degree `n`), given
/// as coefficient lists low degree first.
pub fn sylvester<T: Clone>(f: &[T], m: usize, g: &[T], n: usize, zero: T) -> Vec<Vec<T>> {
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            if let Some(c) = f.get(m - k) {
                row[i + k] = c.clone();
            }
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            if let Some(c) = g.get(n - k) {
                row[i + k] = c.clone();
            }
        }
        rows.push(row);
    }
    rows
}

/// Determinant of a matrix of polynomials by Bareiss elimination.
pub fn det_bareiss<F: Field>(mut a: Vec<Vec<MultiPoly<F::Elem>>>, nvars: usize, fld: &F) -> MultiPoly<F::Elem> {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars, fld);
    }
    let mut negate = false;
    let mut prev = MultiPoly::one(nvars, fld);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j], fld).sub(&a[i][k].mul(&a[k][j], fld), fld);
                a[i][j] = t.div_exact(&prev, fld).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg(fld)
    } else {
        d
    }
}

/// Resultant of two polynomials with respect to variable `v`, using formal degrees.
pub fn resultant_in<F: Field>(
    f: &MultiPoly<F::Elem>,
    m: usize,
    g: &MultiPoly<F::Elem>,
    n: usize,
    v: usize,
    fld: &F,
) -> MultiPoly<F::Elem> {
    let nv = f.nvars();
    let fc = f.coefficients_in(v, fld);
    let gc = g.coefficients_in(v, fld);
    assert!(fc.len() <= m + 1 && gc.len() <= n + 1, "formal degree below actual degree");
    if m + n == 0 {
        return MultiPoly::one(nv, fld);
    }
    let mat = sylvester(&fc, m, &gc, n, MultiPoly::zero(nv));
    det_bareiss(mat, nv, fld)
}

/// Resultant with respect to `v` at the actual degrees in `v`.
pub fn eliminate<F: Field>(f: &MultiPoly<F::Elem>, g: &MultiPoly<F::Elem>, v: usize, fld: &F) -> Result<MultiPoly<F::Elem>> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgError::InvalidArgument("resultant of a zero polynomial".into()));
    }
    if f.nvars() != g.nvars() || v >= f.nvars() {
        return Err(AlgError::InvalidArgument("variable out of range".into()));
    }
    let m = f.degree_in(v).unwrap() as usize;
    let n = g.degree_in(v).unwrap() as usize;
    if m + n == 0 {
        return Err(AlgError::InvalidArgument("eliminated variable does not occur".into()));
    }
    Ok(resultant_in(f, m, g, n, v, fld))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::poly::from_roots;

    #[test]
    fn resultant_is_product_of_root_differences() {
        let f = Gf::prime(101).unwrap();
        let a = from_roots(&[2, 5, 7], &f);
        let b = from_roots(&[3, 11], &f);
        let mut expected = 1;
        for x in [2, 5, 7] {
            for y in [3, 11] {
                expected = f.mul(&expected, &f.sub(&x, &y));
            }
        }
        assert_eq!(resultant(&a, &b, &f), expected);
    }

    #[test]
    fn bareiss_agrees_with_field_resultant() {
        let f = Gf::prime(101).unwrap();
        let a = UniPoly::from_coeffs(vec![3, 0, 7, 1, 9], &f);
        let b = UniPoly::from_coeffs(vec![5, 4, 0, 2], &f);
        let am = MultiPoly::from_univariate(&a, 1, 0, &f);
        let bm = MultiPoly::from_univariate(&b, 1, 0, &f);
        let r = resultant_in(&am, 4, &bm, 3, 0, &f);
        assert_eq!(r.constant_term(&f), resultant(&a, &b, &f));
        for (m, n) in [(5, 3), (4, 5), (6, 4)] {
            let r = resultant_in(&am, m, &bm, n, 0, &f);
            assert_eq!(r.constant_term(&f), resultant_formal(&a, m, &b, n, &f), "formal ({m},{n})");
        }
    }
}
