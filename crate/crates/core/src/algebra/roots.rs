//! Certified complex root isolation.
//!
//! Roots are approximated with Aberth–Ehrlich iterations in ball midpoint
//! arithmetic and then certified with Weierstrass corrections: if the discs
//! `D(z_i, n |W_i|)` are pairwise disjoint, each holds exactly one root.

use super::numeric::{CBall, Dyadic, RBall};
use super::ring::Rat;
use super::unipoly::UniPoly;
use std::cmp::Ordering;

/// Horner evaluation in ball arithmetic.
pub fn eval_ball(coeffs: &[CBall], z: &CBall) -> CBall {
    let mut acc = CBall::zero(z.prec());
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

fn derivative(coeffs: &[CBall]) -> Vec<CBall> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul(&CBall::from_rat(&Rat::from_integer((i as i64).into()), c.prec())))
        .collect()
}

fn initial_guesses(coeffs: &[CBall]) -> Vec<(f64, f64)> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].abs_upper_f64().max(f64::MIN_POSITIVE);
    // Fujiwara-style bound
    let mut r: f64 = 0.0;
    for (k, c) in coeffs.iter().enumerate().take(n) {
        let v = (c.abs_upper_f64() / lc).powf(1.0 / (n - k) as f64);
        r = r.max(v);
    }
    let r = if r.is_finite() && r > 0.0 { 2.0 * r } else { 1.0 };
    (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            (r * th.cos(), r * th.sin())
        })
        .collect()
}

fn upper_abs(z: &CBall) -> Dyadic {
    z.re.abs_upper().add(&z.im.abs_upper())
}

fn lower_abs(z: &CBall) -> Dyadic {
    z.re.abs_lower().max(&z.im.abs_lower())
}

/// Approximates all roots of the ball polynomial and tries to certify them.
/// Returns `None` if certification fails at this precision.
pub fn isolate_ball(coeffs: &[CBall], prec: u64) -> Option<Vec<CBall>> {
    let coeffs: Vec<CBall> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
    let z = aberth(&coeffs, prec)?;
    if z.is_empty() {
        return Some(z);
    }
    certify(&coeffs, &z, prec)
}

/// Uncertified Aberth–Ehrlich approximations (point balls) of all roots.
pub fn aberth(coeffs: &[CBall], prec: u64) -> Option<Vec<CBall>> {
    let coeffs: Vec<CBall> = coeffs.iter().map(|c| c.with_prec(prec)).collect();
    let n = coeffs.len().checked_sub(1)?;
    if n == 0 {
        return Some(vec![]);
    }
    if coeffs[n].contains_zero() {
        return None;
    }
    let dp = derivative(&coeffs);
    let mut z: Vec<CBall> = initial_guesses(&coeffs)
        .into_iter()
        .map(|(a, b)| CBall::from_f64(a, b, prec))
        .collect();
    let tol = Dyadic::pow2(-(prec as i64) + 16);
    let one = CBall::one(prec);
    for _ in 0..(200 + 4 * prec as usize) {
        let mut done = true;
        for i in 0..n {
            let zi = z[i].center();
            let p = eval_ball(&coeffs, &zi).center();
            if p.contains_zero() {
                continue;
            }
            let d = eval_ball(&dp, &zi).center();
            let ratio = match p.div(&d) {
                Some(r) => r.center(),
                None => continue,
            };
            let mut s = CBall::zero(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    if let Some(inv) = zi.sub(&zj.center()).inv() {
                        s = s.add(&inv.center());
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s)).center();
            let step = match ratio.div(&denom) {
                Some(st) => st.center(),
                None => ratio,
            };
            let scale = upper_abs(&zi).add(&Dyadic::from_int(1));
            if upper_abs(&step).cmp_value(&tol.mul(&scale)) == Ordering::Greater {
                done = false;
            }
            z[i] = zi.sub(&step).center();
        }
        if done {
            break;
        }
    }
    Some(z)
}

fn certify(coeffs: &[CBall], z: &[CBall], prec: u64) -> Option<Vec<CBall>> {
    let n = z.len();
    let lc = &coeffs[n];
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut den = lc.clone();
        for j in 0..n {
            if j != i {
                den = den.mul(&z[i].sub(&z[j]));
            }
        }
        let w = eval_ball(coeffs, &z[i]).div(&den)?;
        let r = upper_abs(&w).mul(&Dyadic::from_int(n as i64));
        radii.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = lower_abs(&z[i].sub(&z[j]));
            if gap.cmp_value(&radii[i].add(&radii[j])) != Ordering::Greater {
                return None;
            }
        }
    }
    Some(
        z.iter()
            .zip(radii)
            .map(|(c, r)| {
                CBall::new(
                    RBall::with_rad(c.re.mid().clone(), r.clone(), prec),
                    RBall::with_rad(c.im.mid().clone(), r, prec),
                )
            })
            .collect(),
    )
}

/// Certified isolating balls for the roots of a squarefree rational
/// polynomial, escalating precision from `prec` until certification holds.
pub fn isolate_roots(p: &UniPoly<Rat>, prec: u64) -> Vec<CBall> {
    let mut prec = prec.max(64);
    loop {
        let coeffs: Vec<CBall> = p.coeffs().iter().map(|c| CBall::from_rat(c, prec)).collect();
        if let Some(r) = isolate_ball(&coeffs, prec) {
            return r;
        }
        prec *= 2;
        assert!(prec <= 1 << 16, "root isolation failed to certify");
    }
}

/// Whether the `i`-th isolated root of a real polynomial is real: its ball
/// meets the real axis and no other ball meets its mirror image.
pub fn is_real_root(roots: &[CBall], i: usize) -> bool {
    let b = &roots[i];
    if !b.im.contains_zero() {
        return false;
    }
    let mirror = b.conj();
    roots
        .iter()
        .enumerate()
        .all(|(j, r)| j == i || !r.overlaps(&mirror))
}

/// Index of the isolated root whose ball contains the point `v`, if unique.
pub fn locate(roots: &[CBall], v: &CBall) -> Option<usize> {
    let hits: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].overlaps(v)).collect();
    (hits.len() == 1).then(|| hits[0])
}
