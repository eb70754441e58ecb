//! Roots of univariate polynomials over the current coefficient field,
//! adjoining new algebraic numbers (or dropping to ball arithmetic) as needed.

use super::bipoly::BiPoly;
use super::factor::factor_rational;
use super::field::{ExtElem, ExtensionField};
use super::numeric::{CBall, Dyadic, RBall};
use super::resultant::resultant;
use super::ring::Rat;
use super::roots::{aberth, isolate_ball};
use super::scalar::{Lift, Scalar};
use super::unipoly::UniPoly;
use num_traits::One;
use std::sync::Arc;

/// Arithmetic context of a computation.
#[derive(Clone, Debug)]
pub enum Ctx {
    Rational,
    Field(Arc<ExtensionField>),
    Numeric(u64),
}

impl Ctx {
    pub fn is_numeric(&self) -> bool {
        matches!(self, Ctx::Numeric(_))
    }

    pub fn degree(&self) -> usize {
        match self {
            Ctx::Field(k) => k.degree(),
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub max_ext_degree: usize,
    pub prec: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_ext_degree: 16, prec: 256 }
    }
}

/// One root with its multiplicity, the context it lives in and the rewrite
/// that moves previously computed coefficients into that context.
#[derive(Clone, Debug)]
pub struct AlgRoot {
    pub value: Scalar,
    pub multiplicity: u32,
    pub ctx: Ctx,
    pub lift: Lift,
}

/// All complex roots of `h` (nonconstant) over `ctx`.
pub fn solve(h: &UniPoly<Scalar>, ctx: &Ctx, opt: &SolveOptions) -> Vec<AlgRoot> {
    if h.coeffs().iter().any(Scalar::is_ball) || ctx.is_numeric() {
        let prec = match ctx {
            Ctx::Numeric(p) => *p,
            _ => opt.prec,
        };
        return numeric_roots(h, prec)
            .into_iter()
            .map(|(v, m)| AlgRoot {
                value: Scalar::Ball(v),
                multiplicity: m,
                ctx: Ctx::Numeric(prec),
                lift: if ctx.is_numeric() { Lift::Identity } else { Lift::Numeric(prec) },
            })
            .collect();
    }
    let mut out = Vec::new();
    for (s, m) in h.squarefree_decomposition() {
        if s.deg() == 0 {
            continue;
        }
        match ctx {
            Ctx::Rational => solve_rational(&s, m, opt, &mut out),
            Ctx::Field(k) => solve_field(&s, m, k, opt, &mut out),
            Ctx::Numeric(_) => unreachable!(),
        }
    }
    out
}

fn to_rat_poly(p: &UniPoly<Scalar>) -> UniPoly<Rat> {
    p.map(|c| c.as_rat().cloned().expect("rational coefficient"))
}

fn solve_rational(s: &UniPoly<Scalar>, m: u32, opt: &SolveOptions, out: &mut Vec<AlgRoot>) {
    for (g, _) in factor_rational(&to_rat_poly(s)) {
        if g.deg() == 1 {
            out.push(AlgRoot {
                value: Scalar::Rat(-g.coeff(0) / g.coeff(1)),
                multiplicity: m,
                ctx: Ctx::Rational,
                lift: Lift::Identity,
            });
        } else if g.deg() > opt.max_ext_degree {
            let gs = g.map(|c| Scalar::Rat(c.clone()));
            for (v, _) in numeric_roots(&gs, opt.prec) {
                out.push(AlgRoot {
                    value: Scalar::Ball(v),
                    multiplicity: m,
                    ctx: Ctx::Numeric(opt.prec),
                    lift: Lift::Numeric(opt.prec),
                });
            }
        } else {
            for i in 0..g.deg() {
                let k = ExtensionField::new_irreducible(&g, i);
                out.push(AlgRoot {
                    value: Scalar::Alg(k.generator()),
                    multiplicity: m,
                    ctx: Ctx::Field(k),
                    lift: Lift::Identity,
                });
            }
        }
    }
}

/// Norm `Res_θ(μ(θ), h(X − sθ))` of a polynomial over `ℚ(θ)`.
pub fn norm_shifted(h: &UniPoly<Scalar>, k: &Arc<ExtensionField>, s: i64) -> UniPoly<Rat> {
    // H(θ, X) as a bivariate polynomial with x = θ, y = X
    let shift = BiPoly::<Rat>::y() - BiPoly::x().scale(&Rat::from_integer(s.into()));
    let mut acc = BiPoly::<Rat>::zero();
    for (e, c) in h.coeffs().iter().enumerate() {
        let res = match c {
            Scalar::Rat(r) => UniPoly::constant(r.clone()),
            Scalar::Alg(a) => a.residue().clone(),
            Scalar::Ball(_) => panic!("norm of a numeric polynomial"),
        };
        acc = acc + BiPoly::from_uni_x(&res) * shift.pow(e as u32);
    }
    let h2 = acc.swap().to_y_major();
    let mu: UniPoly<UniPoly<Rat>> = k.minpoly().map(|c| UniPoly::constant(c.clone()));
    resultant(&mu, &h2)
}

/// Trager factorization of a squarefree `h` over `ℚ(θ)`: returns each
/// monic irreducible factor with its (irreducible) shifted norm and the shift.
pub fn factor_over_field(
    h: &UniPoly<Scalar>,
    k: &Arc<ExtensionField>,
) -> Vec<(UniPoly<Scalar>, UniPoly<Rat>, i64)> {
    let theta = Scalar::Alg(k.generator());
    for s in shifts() {
        let n = norm_shifted(h, k, s);
        if n.gcd(&n.derivative()).deg() > 0 {
            continue;
        }
        let back = UniPoly::new(vec![theta.clone() * Scalar::Rat(Rat::from_integer(s.into())), Scalar::one()]);
        let mut out = Vec::new();
        for (ni, _) in factor_rational(&n) {
            let nik = ni.map(|c| Scalar::Rat(c.clone())).compose(&back);
            let g = h.gcd(&nik);
            if g.deg() > 0 {
                out.push((g, ni, s));
            }
        }
        return out;
    }
    unreachable!()
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

fn solve_field(
    s: &UniPoly<Scalar>,
    m: u32,
    k: &Arc<ExtensionField>,
    opt: &SolveOptions,
    out: &mut Vec<AlgRoot>,
) {
    for (g, ni, shift) in factor_over_field(s, k) {
        if g.deg() == 1 {
            let v = -(g.coeff(0) * super::ring::Field::inv(&g.coeff(1)).unwrap());
            out.push(AlgRoot { value: v, multiplicity: m, ctx: Ctx::Field(k.clone()), lift: Lift::Identity });
            continue;
        }
        if ni.deg() > opt.max_ext_degree {
            for (v, _) in numeric_roots(&g, opt.prec) {
                out.push(AlgRoot {
                    value: Scalar::Ball(v),
                    multiplicity: m,
                    ctx: Ctx::Numeric(opt.prec),
                    lift: Lift::Numeric(opt.prec),
                });
            }
            continue;
        }
        let mut prec = opt.prec;
        let alphas = loop {
            let coeffs: Vec<CBall> = g.coeffs().iter().map(|c| c.to_ball(prec)).collect();
            if let Some(r) = isolate_ball(&coeffs, prec) {
                break r;
            }
            prec *= 2;
        };
        let sr = Rat::from_integer(shift.into());
        for alpha in alphas {
            let mut p = prec;
            let l = loop {
                let gamma = alpha.with_prec(p).add(&k.theta(p).mul(&CBall::from_rat(&sr, p)));
                if let Some(l) = ExtensionField::with_root_near(&ni, &gamma) {
                    break l;
                }
                p *= 2;
                assert!(p <= 1 << 14, "could not place primitive element");
            };
            let gamma = Scalar::Alg(l.generator());
            // θ in L from gcd(μ(T), g(γ − sT)) = T − θ_L
            let lin = UniPoly::new(vec![gamma.clone(), Scalar::Rat(-sr.clone())]);
            let mut gt = UniPoly::<Scalar>::zero();
            for c in g.coeffs().iter().rev() {
                let ct = match c {
                    Scalar::Rat(r) => UniPoly::constant(Scalar::Rat(r.clone())),
                    Scalar::Alg(a) => a.residue().map(|x| Scalar::Rat(x.clone())),
                    Scalar::Ball(_) => unreachable!(),
                };
                gt = gt * lin.clone() + ct;
            }
            let mu = k.minpoly().map(|c| Scalar::Rat(c.clone()));
            let lg = mu.gcd(&gt);
            assert_eq!(lg.deg(), 1, "primitive element gcd must be linear");
            let theta_l = -lg.coeff(0);
            let alpha_l = gamma - theta_l.clone() * Scalar::Rat(sr.clone());
            let img = match theta_l {
                Scalar::Alg(e) => e,
                Scalar::Rat(r) => ExtElem::from_rat(r, &l),
                Scalar::Ball(_) => unreachable!(),
            };
            out.push(AlgRoot {
                value: alpha_l,
                multiplicity: m,
                ctx: Ctx::Field(l),
                lift: Lift::Field(img),
            });
        }
    }
}

/// Roots of a polynomial in ball arithmetic. Simple roots are certified;
/// otherwise approximations closer than a precision-dependent threshold
/// are merged into clusters whose ball covers the spread.
pub fn numeric_roots(h: &UniPoly<Scalar>, prec: u64) -> Vec<(CBall, u32)> {
    let coeffs: Vec<CBall> = h.coeffs().iter().map(|c| c.to_ball(prec)).collect();
    if let Some(r) = isolate_ball(&coeffs, prec) {
        return r.into_iter().map(|b| (b, 1)).collect();
    }
    let z = aberth(&coeffs, prec).unwrap_or_default();
    let n = z.len().max(1);
    let tau = 2f64.powf(-(prec as f64) / (2.0 * n as f64)).max(1e-30);
    let pts: Vec<(f64, f64)> = z.iter().map(|b| b.to_f64()).collect();
    let mut used = vec![false; z.len()];
    let mut out = Vec::new();
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        let scale = 1.0 + pts[i].0.hypot(pts[i].1);
        let members: Vec<usize> = (i..z.len())
            .filter(|&j| !used[j] && (pts[j].0 - pts[i].0).hypot(pts[j].1 - pts[i].1) < tau * scale)
            .collect();
        for &j in &members {
            used[j] = true;
        }
        let mut c = CBall::zero(prec);
        for &j in &members {
            c = c.add(&z[j]);
        }
        let inv = CBall::from_rat(&Rat::new(One::one(), (members.len() as i64).into()), prec);
        let c = c.mul(&inv).center();
        let spread = members
            .iter()
            .map(|&j| z[j].dist_f64(&c))
            .fold(0.0, f64::max);
        let rad = Dyadic::from_f64(2.0 * spread + tau * scale);
        let ball = CBall::new(
            RBall::with_rad(c.re.mid().clone(), rad.clone(), prec),
            RBall::with_rad(c.im.mid().clone(), rad, prec),
        );
        out.push((ball, members.len() as u32));
    }
    out
}

/// `n`-th cyclotomic polynomial over ℚ.
pub fn cyclotomic(n: u32) -> UniPoly<Rat> {
    let mut p = UniPoly::monomial(Rat::one(), n as usize) - UniPoly::constant(Rat::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.div_exact_poly(&cyclotomic(d)).expect("cyclotomic divides");
        }
    }
    p
}

/// Adjoins `ζ = exp(2πi/n)` to the context, returning `ζ` with the new
/// context and the lift for existing coefficients.
pub fn adjoin_root_of_unity(n: u32, ctx: &Ctx, opt: &SolveOptions) -> AlgRoot {
    let phi = cyclotomic(n).map(|c| Scalar::Rat(c.clone()));
    let th = 2.0 * std::f64::consts::PI / n as f64;
    let target = (th.cos(), th.sin());
    let roots = solve(&phi, ctx, opt);
    roots
        .into_iter()
        .min_by(|a, b| {
            let da = dist(a.value.to_c64(), target);
            let db = dist(b.value.to_c64(), target);
            da.partial_cmp(&db).unwrap()
        })
        .expect("cyclotomic polynomial has roots")
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat_int;

    fn sp(v: &[i64]) -> UniPoly<Scalar> {
        UniPoly::new(v.iter().map(|&c| Scalar::Rat(rat_int(c))).collect())
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // y^3 (2 - y)
        let r = solve(&sp(&[0, 0, 0, 2, -1]), &Ctx::Rational, &SolveOptions::default());
        let mut got: Vec<(String, u32)> = r.iter().map(|a| (a.value.to_string(), a.multiplicity)).collect();
        got.sort();
        assert_eq!(got, vec![("0".into(), 3), ("2".into(), 1)]);
    }

    #[test]
    fn quadratic_extension_roots() {
        let r = solve(&sp(&[1, 0, 1]), &Ctx::Rational, &SolveOptions::default());
        assert_eq!(r.len(), 2);
        for a in &r {
            let sq = a.value.clone() * a.value.clone();
            assert_eq!(sq, Scalar::Rat(rat_int(-1)));
        }
    }

    #[test]
    fn tower_through_primitive_element() {
        // over Q(√2), solve T^2 - 3
        let k = ExtensionField::new(&UniPoly::new(vec![rat_int(-2), rat_int(0), rat_int(1)]), 1).unwrap();
        let r = solve(&sp(&[-3, 0, 1]), &Ctx::Field(k.clone()), &SolveOptions::default());
        assert_eq!(r.len(), 2);
        for a in &r {
            assert_eq!(a.value.clone() * a.value.clone(), Scalar::Rat(rat_int(3)));
            let Lift::Field(img) = &a.lift else { panic!() };
            let sq = Scalar::Alg(img.clone()) * Scalar::Alg(img.clone());
            assert_eq!(sq, Scalar::Rat(rat_int(2)));
            // embedding is consistent with +√2
            let (re, _) = Scalar::Alg(img.clone()).to_c64();
            assert!((re - 2f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_factor_over_field() {
        // over Q(√2): T^2 - 2 splits
        let k = ExtensionField::new(&UniPoly::new(vec![rat_int(-2), rat_int(0), rat_int(1)]), 1).unwrap();
        let r = solve(&sp(&[-2, 0, 1]), &Ctx::Field(k), &SolveOptions::default());
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|a| matches!(a.lift, Lift::Identity)));
    }

    #[test]
    fn numeric_downgrade_when_degree_capped() {
        let opt = SolveOptions { max_ext_degree: 1, prec: 128 };
        let r = solve(&sp(&[-2, 0, 1]), &Ctx::Rational, &opt);
        assert!(r.iter().all(|a| a.value.is_ball()));
    }

    #[test]
    fn numeric_clusters_multiplicity() {
        let b = |v: i64| Scalar::Ball(CBall::from_rat(&rat_int(v), 256));
        // (x - 1)^2 (x + 2)
        let p = UniPoly::new(vec![b(2), b(-3), b(0), b(1)]);
        let r = solve(&p, &Ctx::Numeric(256), &SolveOptions::default());
        let mut m: Vec<u32> = r.iter().map(|a| a.multiplicity).collect();
        m.sort();
        assert_eq!(m, vec![1, 2]);
    }

    #[test]
    fn cyclotomic_and_zeta() {
        assert_eq!(cyclotomic(4), UniPoly::new(vec![rat_int(1), rat_int(0), rat_int(1)]));
        let z = adjoin_root_of_unity(3, &Ctx::Rational, &SolveOptions::default());
        let z3 = z.value.clone() * z.value.clone() * z.value.clone();
        assert_eq!(z3, Scalar::Rat(rat_int(1)));
        let (re, im) = z.value.to_c64();
        assert!((re + 0.5).abs() < 1e-12 && im > 0.0);
    }
}
