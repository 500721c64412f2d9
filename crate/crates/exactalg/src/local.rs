//! Local intersection multiplicity of plane curves at the origin.

use crate::field::Field;
use crate::multipoly::MultiPoly;

fn on_axis<F: Field>(p: &MultiPoly<F::Elem>, fld: &F) -> MultiPoly<F::Elem> {
    p.specialize(1, &fld.zero(), fld)
}

/// Intersection multiplicity at `(0,0)` of two bivariate polynomials; `None`
/// when they share a component through the origin.
pub fn intersection_multiplicity<F: Field>(f: &MultiPoly<F::Elem>, g: &MultiPoly<F::Elem>, fld: &F) -> Option<u64> {
    assert_eq!(f.nvars(), 2);
    let mut f = f.clone();
    let mut g = g.clone();
    let mut total = 0u64;
    loop {
        if f.is_zero() || g.is_zero() {
            return None;
        }
        if !fld.is_zero(&f.constant_term(fld)) || !fld.is_zero(&g.constant_term(fld)) {
            return Some(total);
        }
        let fa = on_axis(&f, fld);
        let ga = on_axis(&g, fld);
        match (fa.degree_in(0), ga.degree_in(0)) {
            // both divisible by y: a common component through the origin
            (None, None) => return None,
            (None, Some(_)) => {
                total += ga.strip_variable(0).1 as u64;
                f = f.div_exact(&MultiPoly::var(2, 1, fld), fld).expect("divisible by y");
            }
            (Some(_), None) => std::mem::swap(&mut f, &mut g),
            (Some(r), Some(s)) => {
                let (fa, ga, r, s) = if r > s {
                    std::mem::swap(&mut f, &mut g);
                    (ga, fa, s, r)
                } else {
                    (fa, ga, r, s)
                };
                let lf = fa.coeff(&[r, 0], fld);
                let lg = ga.coeff(&[s, 0], fld);
                g = g.scale(&lf, fld).sub(&f.mul_monomial(&[s - r, 0], &lg, fld), fld);
            }
        }
    }
}

/// Intersection multiplicity at an arbitrary affine point.
pub fn intersection_multiplicity_at<F: Field>(
    f: &MultiPoly<F::Elem>,
    g: &MultiPoly<F::Elem>,
    point: &[F::Elem; 2],
    fld: &F,
) -> Option<u64> {
    let shift = |p: &MultiPoly<F::Elem>| {
        let subs: Vec<MultiPoly<F::Elem>> = (0..2)
            .map(|i| MultiPoly::var(2, i, fld).add(&MultiPoly::constant(2, point[i].clone(), fld), fld))
            .collect();
        p.substitute(&subs, fld)
    };
    intersection_multiplicity(&shift(f), &shift(g), fld)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    fn poly(f: &Gf, terms: &[((u32, u32), i64)]) -> MultiPoly<u32> {
        MultiPoly::from_terms(2, terms.iter().map(|&((a, b), c)| (vec![a, b], f.from_i64(c))), f)
    }

    #[test]
    fn classical_examples() {
        let f = Gf::prime(101).unwrap();
        // tangent line to a parabola
        let parabola = poly(&f, &[((2, 0), 1), ((0, 1), -1)]);
        let axis = poly(&f, &[((0, 1), 1)]);
        assert_eq!(intersection_multiplicity(&parabola, &axis, &f), Some(2));
        // transverse lines
        let x = poly(&f, &[((1, 0), 1)]);
        assert_eq!(intersection_multiplicity(&x, &axis, &f), Some(1));
        // cusp against its tangent: y^2 - x^3 and y
        let cusp = poly(&f, &[((0, 2), 1), ((3, 0), -1)]);
        assert_eq!(intersection_multiplicity(&cusp, &axis, &f), Some(3));
        assert_eq!(intersection_multiplicity(&cusp, &x, &f), Some(2));
        // two nodes-like: (y^2 - x^2 - x^3) with (y - x)... = 3 (line through node along branch)
        let node = poly(&f, &[((0, 2), 1), ((2, 0), -1), ((3, 0), -1)]);
        let diag = poly(&f, &[((0, 1), 1), ((1, 0), -1)]);
        assert_eq!(intersection_multiplicity(&node, &diag, &f), Some(3));
        // common component
        let xy = poly(&f, &[((1, 1), 1)]);
        assert_eq!(intersection_multiplicity(&xy, &x, &f), None);
        // point off the curve
        let one = poly(&f, &[((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(intersection_multiplicity(&one, &x, &f), Some(0));
    }

    #[test]
    fn shifted_point() {
        let f = Gf::prime(101).unwrap();
        // circle x^2 + y^2 - 1 and tangent x = 1 at (1, 0)
        let circle = poly(&f, &[((2, 0), 1), ((0, 2), 1), ((0, 0), -1)]);
        let tangent = poly(&f, &[((1, 0), 1), ((0, 0), -1)]);
        assert_eq!(intersection_multiplicity_at(&circle, &tangent, &[1, 0], &f), Some(2));
        assert_eq!(intersection_multiplicity_at(&circle, &tangent, &[0, 1], &f), Some(0));
    }
}
