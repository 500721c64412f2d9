//! Dense linear algebra over a field.

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F::Elem>, fld: &F) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !fld.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = fld.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = fld.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !fld.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let t = fld.mul(&factor, &m[r][j]);
                    m[i][j] = fld.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F::Elem>, fld: &F) -> usize {
    let mut a = m.clone();
    rref(&mut a, fld).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &Matrix<F::Elem>, cols: usize, fld: &F) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(&mut a, fld);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![fld.zero(); cols];
            v[fc] = fld.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = fld.neg(&a[r][fc]);
            }
            v
        })
        .collect()
}

pub fn determinant<F: Field>(m: &Matrix<F::Elem>, fld: &F) -> F::Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut det = fld.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !fld.is_zero(&a[i][c])) else { return fld.zero() };
        if p != c {
            a.swap(p, c);
            det = fld.neg(&det);
        }
        det = fld.mul(&det, &a[c][c]);
        let inv = fld.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            let factor = fld.mul(&a[i][c], &inv);
            if fld.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let t = fld.mul(&factor, &a[c][j]);
                a[i][j] = fld.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Vectors completing the row space of `basis` to the full space, chosen among unit vectors.
pub fn complement<F: Field>(basis: &[Vec<F::Elem>], dim: usize, fld: &F) -> Vec<Vec<F::Elem>> {
    let mut current: Matrix<F::Elem> = basis.to_vec();
    let mut out = Vec::new();
    let mut r = rank(&current, fld);
    for i in 0..dim {
        let mut e = vec![fld.zero(); dim];
        e[i] = fld.one();
        current.push(e.clone());
        let r2 = rank(&current, fld);
        if r2 > r {
            r = r2;
            out.push(e);
        } else {
            current.pop();
        }
    }
    out
}

/// 2x2 minors `x_i y_j - x_j y_i` for `i < j`.
pub fn wedge<F: Field>(x: &[F::Elem], y: &[F::Elem], fld: &F) -> Vec<F::Elem> {
    let n = x.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(fld.sub(&fld.mul(&x[i], &y[j]), &fld.mul(&x[j], &y[i])));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn kernel_and_rank() {
        let f = Gf::prime(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&m, &f), 2);
        let k = kernel(&m, 3, &f);
        assert_eq!(k.len(), 1);
        for row in &m {
            let s = row.iter().zip(&k[0]).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            assert_eq!(s, 0);
        }
        assert_eq!(determinant(&m, &f), 0);
        assert_eq!(determinant(&vec![vec![1, 2], vec![3, 4]], &f), f.from_i64(-2));
    }
}
