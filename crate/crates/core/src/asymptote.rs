//! Generalized asymptotes from infinity branches: truncated series,
//! polynomial parametrization and implicit equation.

use crate::algebra::resultant::{implicitize_monomial, resultant, resultant_sylvester};
use crate::algebra::ring::{gcd_u32, Ring};
use crate::algebra::solve::adjoin_root_of_unity;
use crate::algebra::{BiPoly, Ctx, Rat, Scalar, SolveOptions, UniPoly};
use crate::branch::{InfinityBranch, PreparedCurve};
use crate::puiseux::{puiseux_solutions, Guarantee, TruncationPolicy};
use crate::Error;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct Asymptote {
    pub n: u32,
    /// Infinity point in the prepared frame.
    pub m: Scalar,
    /// Nonnegative part of `r`, as `(exponent, coefficient)`.
    pub r_tilde: Vec<(Rat, Scalar)>,
    /// `(tⁿ, p(t))` in the prepared frame.
    pub param: (UniPoly<Scalar>, UniPoly<Scalar>),
    /// Implicit equation in the prepared frame, monic on its leading term
    /// in the `y`-first order.
    pub implicit: BiPoly<Scalar>,
    pub lambda: u32,
    /// Parametrization and implicit equation in the input coordinates.
    pub param_original: (UniPoly<Scalar>, UniPoly<Scalar>),
    pub implicit_original: BiPoly<Scalar>,
    /// `gcd(n, exponents of p)`; equals 1 for a proper parametrization.
    pub properness_gcd: u32,
    pub ctx: Ctx,
    /// Built on the transposed curve and mapped back by exchanging `x` and `y`.
    pub transposed: bool,
}

impl Asymptote {
    pub fn is_exact(&self) -> bool {
        !self.ctx.is_numeric()
    }

    /// The implicit equation over ℚ when all coefficients are rational.
    pub fn implicit_rational(&self) -> Option<BiPoly<Rat>> {
        to_rational(&self.implicit_original)
    }

    /// Exchanges `x` and `y` in the input-frame fields.
    pub fn transpose(mut self) -> Self {
        let (px, py) = self.param_original;
        self.param_original = (py, px);
        self.implicit_original = self.implicit_original.swap().monic_y();
        self.transposed = !self.transposed;
        self
    }
}

pub fn to_rational(p: &BiPoly<Scalar>) -> Option<BiPoly<Rat>> {
    let mut out = BiPoly::zero();
    for (m, c) in p.terms() {
        out.add_term(*m, c.as_rat()?.clone());
    }
    Some(out)
}

pub fn to_scalar(p: &BiPoly<Rat>) -> BiPoly<Scalar> {
    p.map(|c| Scalar::Rat(c.clone()))
}

/// The terms of `r` with nonnegative exponent.
pub fn truncate_branch(b: &InfinityBranch) -> Vec<(Rat, Scalar)> {
    b.nonneg_terms().to_vec()
}

/// `(tⁿ, r̃(tⁿ))` together with the properness gcd.
pub fn build_parametrization(
    r_tilde: &[(Rat, Scalar)],
    n: u32,
) -> Result<((UniPoly<Scalar>, UniPoly<Scalar>), u32), Error> {
    let nr = Rat::from_integer(n.into());
    let mut coeffs = vec![Scalar::zero(); n as usize + 1];
    let mut g = n;
    for (q, a) in r_tilde {
        let e = q * &nr;
        if !e.is_integer() || e.is_negative() || e > nr {
            return Err(Error::Invariant(format!("exponent {e} of r(t^n) is not in 0..=n")));
        }
        let k: usize = e.to_integer().try_into().unwrap();
        coeffs[k] = coeffs[k].clone() + a.clone();
        g = gcd_u32(g, k as u32);
    }
    let x = UniPoly::monomial(Scalar::one(), n as usize);
    Ok(((x, UniPoly::new(coeffs)), g))
}

/// `Res_t(x - tⁿ, y - p(t))`, normalized monic on its `y`-first leading term.
pub fn implicitize(param: &(UniPoly<Scalar>, UniPoly<Scalar>)) -> Result<BiPoly<Scalar>, Error> {
    let n = param.0.deg() as u32;
    let p = &param.1;
    if p.coeffs().iter().all(|c| c.as_rat().is_some()) {
        let pr = p.map(|c| c.as_rat().unwrap().clone());
        let f = implicitize_monomial(n, &pr)?;
        return Ok(to_scalar(&f).monic_y());
    }
    let a = UniPoly::new(
        (0..=n)
            .map(|k| match k {
                0 => BiPoly::x(),
                k if k == n => BiPoly::constant(-Scalar::one()),
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
    let r: BiPoly<Scalar> = resultant(&a, &b);
    if r.is_zero() {
        return Err(Error::DegenerateResultant);
    }
    Ok(r.monic_y())
}

/// `f(x - λy, y)` over the coefficient field.
pub fn unshear_scalar(f: &BiPoly<Scalar>, lambda: u32) -> BiPoly<Scalar> {
    if lambda == 0 {
        return f.clone();
    }
    let l = Scalar::from_i64(lambda as i64);
    let px = BiPoly::x() - BiPoly::y().scale(&l);
    f.compose(&px, &BiPoly::y())
}

/// Builds the asymptote of a branch of the prepared curve and maps it back
/// to the input frame.
pub fn build_asymptote(c: &PreparedCurve, b: &InfinityBranch) -> Result<Asymptote, Error> {
    let r_tilde = truncate_branch(b);
    let (param, g) = build_parametrization(&r_tilde, b.n)?;
    let implicit = implicitize(&param)?;
    let lambda = c.lambda;
    let l = Scalar::from_i64(lambda as i64);
    let param_original = (param.0.clone() + param.1.scale(&l), param.1.clone());
    let implicit_original = unshear_scalar(&implicit, lambda).monic_y();
    Ok(Asymptote {
        n: b.n,
        m: b.series.constant(),
        r_tilde,
        param,
        implicit,
        lambda,
        param_original,
        implicit_original,
        properness_gcd: g,
        ctx: b.series.ctx.clone(),
        transposed: false,
    })
}

/// Asymptotes of the branches along which `y` grows faster than `x`,
/// written as graphs `y = P(x)` truncated to the nonnegative powers of `x`.
///
/// `y` is expanded as a Puiseux series in `w = 1/x` after the substitution
/// `y = Y w^{-d}`, which keeps `Y` bounded on every branch. Branches with
/// bounded `x` have no such form and are skipped.
pub fn graph_asymptotes(f: &BiPoly<Rat>, policy: &TruncationPolicy) -> Result<Vec<Asymptote>, Error> {
    let d = f.total_degree().unwrap_or(0);
    if d < 2 {
        return Ok(Vec::new());
    }
    let top = f.terms().map(|((i, j), _)| i + d * j).max().unwrap();
    let g = BiPoly::from_terms(f.terms().map(|((i, j), c)| ((*j, top - i - d * j), Scalar::Rat(c.clone()))));
    let dr = Rat::from_integer(d.into());
    let order = &dr + Rat::new(1.into(), (d + 1).into());
    let pol = TruncationPolicy { guarantee: Guarantee::FixedOrder(order.clone()), ..policy.clone() };
    let mut out = Vec::new();
    for class in puiseux_solutions(&g, &pol)? {
        let s = class.representative;
        if s.truncation.as_ref().is_some_and(|t| *t < order) {
            continue;
        }
        let Some((q0, _)) = s.terms.iter().find(|(_, c)| !c.is_zero_value()) else { continue };
        if *q0 >= &dr - Rat::one() {
            continue;
        }
        let nn = s.ramification;
        let nr = Rat::from_integer(nn.into());
        let terms: Vec<(Rat, Scalar)> = s
            .terms
            .iter()
            .filter(|(q, c)| *q <= dr && !c.is_zero_value())
            .map(|(q, c)| (&dr - q, c.clone()))
            .collect();
        let g0 = terms.iter().fold(nn, |acc, (e, _)| gcd_u32(acc, (e * &nr).to_integer().try_into().unwrap()));
        let nu = nn / g0;
        let nur = Rat::from_integer(nu.into());
        let top_k: usize = terms.iter().map(|(e, _)| (e * &nur).to_integer().try_into().unwrap()).max().unwrap();
        let mut coeffs = vec![Scalar::zero(); top_k + 1];
        for (e, c) in &terms {
            let k: usize = (e * &nur).to_integer().try_into().unwrap();
            coeffs[k] = coeffs[k].clone() + c.clone();
        }
        let param = (UniPoly::monomial(Scalar::one(), nu as usize), UniPoly::new(coeffs));
        let implicit = implicitize(&param)?;
        out.push(Asymptote {
            n: nu,
            m: Scalar::zero(),
            r_tilde: terms,
            param: param.clone(),
            implicit: implicit.clone(),
            lambda: 0,
            param_original: param,
            implicit_original: implicit,
            properness_gcd: 1,
            ctx: s.ctx.clone(),
            transposed: false,
        });
    }
    Ok(out)
}

/// Whether `implicit(param(t))` vanishes identically.
pub fn param_satisfies(implicit: &BiPoly<Scalar>, param: &(UniPoly<Scalar>, UniPoly<Scalar>)) -> bool {
    let dx = implicit.deg_x();
    let dy = implicit.deg_y();
    let xp: Vec<UniPoly<Scalar>> = (0..=dx).map(|k| param.0.pow(k)).collect();
    let yp: Vec<UniPoly<Scalar>> = (0..=dy).map(|k| param.1.pow(k)).collect();
    let mut acc = UniPoly::zero();
    for ((i, j), a) in implicit.terms() {
        acc = acc + (xp[*i as usize].clone() * yp[*j as usize].clone()).scale(a);
    }
    acc.coeffs().iter().all(|c| c.is_zero_value())
}

/// Every conjugate leaf of the branch gives the same parametrization after
/// the substitution `t -> u t` for a suitable `n`-th root of unity `u`.
/// All leaves are handled in one extension by a primitive `N`-th root of
/// unity `ζ`, the `j`-th leaf scaling the term `z^{Nᵢ/N}` of `φ` by `ζ^{j Nᵢ}`.
pub fn leaf_independence_check(b: &InfinityBranch, opt: &SolveOptions) -> Result<bool, Error> {
    let nn = b.ramification;
    if nn == 1 {
        return Ok(true);
    }
    let zeta = adjoin_root_of_unity(nn, &b.series.ctx, opt);
    let terms: Vec<(Rat, Scalar)> = truncate_branch(b).into_iter().map(|(q, a)| (q, a.lift(&zeta.lift))).collect();
    let (base, _) = build_parametrization(&terms, b.n)?;
    let nr = Rat::from_integer(nn.into());
    let numerators: Vec<u32> = terms
        .iter()
        .map(|(q, _)| ((Rat::one() - q) * &nr).to_integer().try_into().expect("nonnegative exponent"))
        .collect();
    // ζ^{N/n} generates the n-th roots of unity
    let step = nn / b.n.max(1);
    for j in 1..=nn {
        let conj: Vec<(Rat, Scalar)> = terms
            .iter()
            .zip(&numerators)
            .map(|((q, a), &ni)| (q.clone(), a.clone() * zeta.value.pow_u((j * ni) % nn)))
            .collect();
        let (ps, _) = build_parametrization(&conj, b.n)?;
        let found = (0..b.n).any(|i| {
            let u = zeta.value.pow_u((step * i) % nn);
            (0..=b.n as usize).all(|k| (ps.1.coeff(k) * u.pow_u(k as u32)).equals(&base.1.coeff(k)) != Some(false))
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product of the Galois conjugates of an implicit equation over `ℚ(θ)`,
/// giving a rational polynomial. Rational input is returned unchanged.
pub fn norm_down(f: &BiPoly<Scalar>) -> Result<BiPoly<Rat>, Error> {
    if let Some(r) = to_rational(f) {
        return Ok(r);
    }
    let field = f
        .terms()
        .find_map(|(_, c)| c.field().cloned())
        .ok_or_else(|| Error::Invariant("numeric coefficients cannot be normed".into()))?;
    // F(θ) as a polynomial in θ with coefficients in ℚ[x, y]
    let deg = field.degree();
    let mut rows: Vec<BiPoly<Rat>> = vec![BiPoly::zero(); deg];
    for ((i, j), c) in f.terms() {
        let res = match c {
            Scalar::Rat(r) => UniPoly::constant(r.clone()),
            Scalar::Alg(e) => e.residue().clone(),
            Scalar::Ball(_) => return Err(Error::Invariant("numeric coefficient".into())),
        };
        for (k, a) in res.coeffs().iter().enumerate() {
            rows[k].add_term((*i, *j), a.clone());
        }
    }
    let mu = UniPoly::new(field.minpoly().coeffs().iter().map(|c| BiPoly::constant(c.clone())).collect());
    let big = UniPoly::new(rows);
    let r = resultant_sylvester(&mu, &big)?;
    Ok(to_scalar(&r).monic_y().map(|c| c.as_rat().unwrap().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;
    use crate::branch::{all_branches, prepare_curve};
    use crate::parser::{format_poly, parse_poly, Style};
    use crate::puiseux::TruncationPolicy;

    fn asymptotes(s: &str) -> Vec<String> {
        let c = prepare_curve(&parse_poly(s).unwrap()).unwrap();
        let mut out = Vec::new();
        for (_, bs) in all_branches(&c, &TruncationPolicy::default()).unwrap() {
            for b in bs {
                let a = build_asymptote(&c, &b).unwrap();
                assert!(param_satisfies(&a.implicit, &a.param));
                assert!(param_satisfies(&a.implicit_original, &a.param_original));
                assert_eq!(a.properness_gcd, 1);
                assert!(leaf_independence_check(&b, &SolveOptions::default()).unwrap());
                out.push(format_poly(&a.implicit_rational().unwrap(), Style::Plain));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn quartic_with_cusp() {
        let a = asymptotes("2*y^3*x - y^4 + 2*y^2*x - y^3 - 2*x^3 + x^2*y + 3");
        assert_eq!(a, vec!["y - 2*x", "y^3 + y^2 - x^2 + 1/3*y + 1/27"]);
    }

    #[test]
    fn parametrization_shapes() {
        let r = vec![(rat(2, 3), Scalar::one()), (rat(0, 1), Scalar::Rat(rat(-1, 3)))];
        let ((x, p), g) = build_parametrization(&r, 3).unwrap();
        assert_eq!(x.deg(), 3);
        assert_eq!(p.coeff(2), Scalar::one());
        assert_eq!(p.coeff(0), Scalar::Rat(rat(-1, 3)));
        assert_eq!(g, 1);
        assert!(build_parametrization(&[(rat(1, 2), Scalar::one())], 3).is_err());
    }

    #[test]
    fn sheared_inputs_map_back() {
        assert_eq!(asymptotes("x*y - 1"), vec!["x", "y"]);
        // the shear moves the truncation: y = x^2 + 1/4 is in the same class
        assert_eq!(asymptotes("y - x^2"), vec!["-x^2 + y - 1/4"]);
    }

    #[test]
    fn graph_form_of_parabolic_branches() {
        let pol = TruncationPolicy::default();
        let one = |s: &str| {
            let a = graph_asymptotes(&parse_poly(s).unwrap(), &pol).unwrap();
            a.iter().map(|a| format_poly(&a.implicit_original, Style::Plain)).collect::<Vec<_>>()
        };
        assert_eq!(one("y - x^2"), vec!["-x^2 + y"]);
        assert_eq!(one("-y*x - y^2 - x^3 + 2*x^2*y + x^2 - 2*y"), vec!["-2*x^2 + y + 3/2*x + 15/8"]);
        assert!(one("x*y - 1").is_empty());
    }

    #[test]
    fn circle_norms_to_rational() {
        let c = prepare_curve(&parse_poly("x^2 + y^2 - 1").unwrap()).unwrap();
        let mut prod = Vec::new();
        for (_, bs) in all_branches(&c, &TruncationPolicy::default()).unwrap() {
            for b in bs {
                let a = build_asymptote(&c, &b).unwrap();
                assert!(a.implicit_rational().is_none());
                prod.push(format_poly(&norm_down(&a.implicit_original).unwrap(), Style::Plain));
            }
        }
        assert_eq!(prod, vec!["y^2 + x^2"; 2]);
    }
}
