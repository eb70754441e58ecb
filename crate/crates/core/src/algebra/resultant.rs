//! Sylvester resultants by fraction-free (Bareiss) elimination.

use super::bipoly::BiPoly;
use super::ring::{Rat, Ring};
use super::unipoly::UniPoly;
use crate::error::Error;

/// Sylvester matrix of `p` and `q`, rows ordered as the `deg q` shifts of
/// `p` followed by the `deg p` shifts of `q`, columns by descending power.
pub fn sylvester_matrix<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> Vec<Vec<R>> {
    let m = p.deg();
    let n = q.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts, deg) in [(p, n, m), (q, m, n)] {
        for s in 0..shifts {
            let mut row = vec![R::zero(); size];
            for k in 0..=deg {
                row[s + deg - k] = poly.coeff(k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant by Bareiss elimination; exact divisions only.
pub fn det_bareiss<R: Ring>(mut a: Vec<Vec<R>>) -> R {
    let n = a.len();
    if n == 0 {
        return R::one();
    }
    let mut sign = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Exact resultant with respect to the polynomial variable.
pub fn resultant<R: Ring>(p: &UniPoly<R>, q: &UniPoly<R>) -> R {
    if p.is_zero() || q.is_zero() {
        return R::zero();
    }
    det_bareiss(sylvester_matrix(p, q))
}

/// `Res_t(p, q)` for polynomials in `t` with bivariate rational coefficients,
/// normalized to integer content 1 with a positive coefficient on the
/// leading `y`-power term.
pub fn resultant_sylvester(
    p: &UniPoly<BiPoly<Rat>>,
    q: &UniPoly<BiPoly<Rat>>,
) -> Result<BiPoly<Rat>, Error> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::DegenerateResultant);
    }
    if p.deg() == 0 && q.deg() == 0 {
        return Err(Error::DegenerateResultant);
    }
    Ok(resultant(p, q).primitive())
}

/// `Res_t(x - t^n, y - p(t))`, the implicit equation of `(t^n, p(t))`.
pub fn implicitize_monomial(n: u32, p: &UniPoly<Rat>) -> Result<BiPoly<Rat>, Error> {
    let a = UniPoly::new(
        (0..=n)
            .map(|k| match k {
                0 => BiPoly::x(),
                k if k == n => BiPoly::constant(-Rat::from_i64(1)),
                _ => BiPoly::zero(),
            })
            .collect(),
    );
    let b = UniPoly::new(
        (0..=p.deg())
            .map(|k| {
                let c = BiPoly::constant(-p.coeff(k));
                if k == 0 {
                    BiPoly::y() + c
                } else {
                    c
                }
            })
            .collect(),
    );
    resultant_sylvester(&a, &b)
}

/// `Res_t(x - px(t), y - py(t))` for an arbitrary polynomial parametrization.
pub fn implicitize_param(px: &UniPoly<Rat>, py: &UniPoly<Rat>) -> Result<BiPoly<Rat>, Error> {
    let lift = |p: &UniPoly<Rat>, v: BiPoly<Rat>| {
        UniPoly::new(
            (0..=p.deg())
                .map(|k| {
                    let c = BiPoly::constant(-p.coeff(k));
                    if k == 0 {
                        v.clone() + c
                    } else {
                        c
                    }
                })
                .collect(),
        )
    };
    resultant_sylvester(&lift(px, BiPoly::x()), &lift(py, BiPoly::y()))
}
