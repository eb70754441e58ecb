//! Infinity points and infinity branches of an affine curve.

use crate::algebra::ring::{gcd_u32, Ring};
use crate::algebra::solve::{adjoin_root_of_unity, solve, AlgRoot};
use crate::algebra::{factor_bivariate, BiPoly, Rat, Scalar, SolveOptions, UniPoly};
use crate::puiseux::{at_infinity, at_origin, expand_at, PuiseuxSeries, TruncationPolicy};
use crate::Error;
use num_traits::{One, Signed, Zero};

/// A curve in the coordinates where `(0:1:0)` is not an infinity point.
#[derive(Clone, Debug)]
pub struct PreparedCurve {
    /// Squarefree, content-free defining polynomial after the shear.
    pub f: BiPoly<Rat>,
    pub d: u32,
    /// The shear `x -> x + λ y` applied to the input.
    pub lambda: u32,
    pub original: BiPoly<Rat>,
    /// Distinct irreducible factors of the input (before the shear).
    pub factors: Vec<BiPoly<Rat>>,
    /// Whether the factor list is certified complete.
    pub factors_complete: bool,
}

impl PreparedCurve {
    pub fn is_reducible(&self) -> bool {
        self.factors.len() > 1
    }

    /// `g(y, z) = F(1 : y : z)`.
    pub fn g(&self) -> BiPoly<Scalar> {
        at_infinity(&self.f)
    }

    pub fn leading_form(&self) -> BiPoly<Rat> {
        self.f.homogeneous(self.d)
    }
}

#[derive(Clone, Debug)]
pub struct InfinityPoint {
    /// `m` with its context and lift.
    pub root: AlgRoot,
    pub multiplicity: u32,
}

impl InfinityPoint {
    pub fn m(&self) -> &Scalar {
        &self.root.value
    }
}

#[derive(Clone, Debug)]
pub struct InfinityBranch {
    pub point: InfinityPoint,
    /// The underlying series `φ`.
    pub series: PuiseuxSeries,
    /// Terms of `r(z) = z φ(1/z)` with decreasing exponents.
    pub r_terms: Vec<(Rat, Scalar)>,
    pub ramification: u32,
    /// Number of terms with nonnegative exponent.
    pub k: usize,
    pub b: u32,
    pub n: u32,
    /// `n₁ < ... < n_k`, the reduced numerators of the nonconstant
    /// nonnegative terms.
    pub reduced: Vec<u32>,
}

impl InfinityBranch {
    /// Nonnegative-exponent part of `r`.
    pub fn nonneg_terms(&self) -> &[(Rat, Scalar)] {
        &self.r_terms[..self.k]
    }
}

/// Leading form `f_d`, squarefree part and the smallest shear making
/// `f_d(0, 1) ≠ 0`.
pub fn prepare_curve(f: &BiPoly<Rat>) -> Result<PreparedCurve, Error> {
    if f.total_degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let fac = factor_bivariate(f);
    let factors: Vec<BiPoly<Rat>> = fac
        .factors
        .iter()
        .filter(|(p, _)| p.total_degree().unwrap_or(0) > 0)
        .map(|(p, _)| p.clone())
        .collect();
    let sqf = if fac.factors.iter().all(|(_, e)| *e == 1) {
        f.primitive()
    } else {
        factors
            .iter()
            .fold(BiPoly::constant(Rat::one()), |acc, p| acc * p.clone())
            .primitive()
    };
    let d = sqf.total_degree().unwrap();
    let fd = sqf.homogeneous(d);
    let lambda = (0u32..)
        .find(|&l| !fd.eval(&Rat::from_integer(l.into()), &Rat::one()).is_zero())
        .unwrap();
    let f_sheared = shear(&sqf, lambda);
    Ok(PreparedCurve {
        f: f_sheared,
        d,
        lambda,
        original: f.clone(),
        factors,
        factors_complete: fac.complete,
    })
}

/// The curve with `x` and `y` exchanged and no shear, used to expand the
/// branches at the input's vertical point `(0:1:0)` as `x` in terms of `y`.
/// `None` when the input has no vertical infinity point.
pub fn transposed_curve(c: &PreparedCurve) -> Option<PreparedCurve> {
    if c.lambda == 0 {
        return None;
    }
    Some(PreparedCurve {
        f: unshear(&c.f, c.lambda).swap(),
        d: c.d,
        lambda: 0,
        original: c.original.swap(),
        factors: c.factors.iter().map(|p| p.swap()).collect(),
        factors_complete: c.factors_complete,
    })
}

/// Slope of the prepared frame's infinity point that is `(0:1:0)` in the
/// input frame.
pub fn vertical_slope(c: &PreparedCurve) -> Option<Rat> {
    (c.lambda != 0).then(|| -Rat::new(1.into(), c.lambda.into()))
}

/// Branches of the transposed curve at `m = 0`, i.e. at the input's
/// vertical point.
pub fn vertical_branches(t: &PreparedCurve, policy: &TruncationPolicy) -> Result<Vec<InfinityBranch>, Error> {
    match infinity_points(t, &policy.solve).into_iter().find(|p| p.m().is_zero_value()) {
        Some(p) => infinity_branches(t, &p, policy),
        None => Err(Error::Invariant("transposed curve has no point at m = 0".into())),
    }
}

/// `f(x + λ y, y)`.
pub fn shear(f: &BiPoly<Rat>, lambda: u32) -> BiPoly<Rat> {
    if lambda == 0 {
        return f.clone();
    }
    let l = Rat::from_integer(lambda.into());
    let px = BiPoly::x() + BiPoly::y().scale(&l);
    f.compose(&px, &BiPoly::y())
}

/// `f(x - λ y, y)`, the inverse shear.
pub fn unshear(f: &BiPoly<Rat>, lambda: u32) -> BiPoly<Rat> {
    if lambda == 0 {
        return f.clone();
    }
    let l = Rat::from_integer(lambda.into());
    let px = BiPoly::x() - BiPoly::y().scale(&l);
    f.compose(&px, &BiPoly::y())
}

/// Roots of `f_d(1, y)` with multiplicities.
pub fn infinity_points(c: &PreparedCurve, opt: &SolveOptions) -> Vec<InfinityPoint> {
    let g0 = at_origin(&c.g());
    solve(&g0, &crate::algebra::Ctx::Rational, opt)
        .into_iter()
        .map(|root| InfinityPoint { multiplicity: root.multiplicity, root })
        .collect()
}

/// One branch per conjugacy class of solutions with constant term `m`.
pub fn infinity_branches(
    c: &PreparedCurve,
    p: &InfinityPoint,
    policy: &TruncationPolicy,
) -> Result<Vec<InfinityBranch>, Error> {
    let classes = expand_at(&c.g(), &p.root, policy)?;
    Ok(classes
        .into_iter()
        .map(|cl| make_branch(p.clone(), cl.representative))
        .collect())
}

/// All branches of the curve, grouped by infinity point.
pub fn all_branches(
    c: &PreparedCurve,
    policy: &TruncationPolicy,
) -> Result<Vec<(InfinityPoint, Vec<InfinityBranch>)>, Error> {
    infinity_points(c, &policy.solve)
        .into_iter()
        .map(|p| infinity_branches(c, &p, policy).map(|b| (p, b)))
        .collect()
}

/// `N_i = e_i N` for a term exponent `e_i` of `φ`.
fn numerator(e: &Rat, n: u32) -> u32 {
    (e * Rat::from_integer(n.into())).to_integer().try_into().expect("small exponent")
}

pub fn make_branch(point: InfinityPoint, series: PuiseuxSeries) -> InfinityBranch {
    let nn = series.ramification;
    let r_terms = series.r_terms();
    let k = r_terms.iter().take_while(|(q, _)| !q.is_negative()).count();
    let nums: Vec<u32> = series.terms[..k]
        .iter()
        .map(|(e, _)| numerator(e, nn))
        .filter(|&v| v > 0)
        .collect();
    let b = nums.iter().fold(nn, |acc, &v| gcd_u32(acc, v));
    let reduced = nums.iter().map(|v| v / b).collect();
    InfinityBranch { point, series, r_terms, ramification: nn, k, b, n: nn / b, reduced }
}

/// `(n, b, reduced exponents)`.
pub fn branch_degree(b: &InfinityBranch) -> (u32, u32, Vec<u32>) {
    (b.n, b.b, b.reduced.clone())
}

/// Whether `(y - m x)^N` divides `f_d`, checked through the multiplicity of
/// `m` as a root of `f_d(1, y)`.
pub fn leading_divisibility(c: &PreparedCurve, b: &InfinityBranch) -> bool {
    let g0 = at_origin(&c.g()).map(|s| s.lift(&b.point.root.lift));
    let m = b.point.m();
    let lin = UniPoly::new(vec![-m.clone(), Scalar::one()]);
    let mut p = g0;
    for _ in 0..b.ramification {
        let (q, r) = p.div_rem(&lin);
        if !r.coeffs().iter().all(|c| c.is_zero_value()) {
            return false;
        }
        p = q;
    }
    true
}

/// Whether the nonnegative parts of two branches agree up to conjugation.
/// `None` when a numeric comparison is inconclusive.
pub fn branches_convergent(b1: &InfinityBranch, b2: &InfinityBranch) -> Option<bool> {
    let (t1, t2) = (b1.nonneg_terms(), b2.nonneg_terms());
    if t1.len() != t2.len() || t1.iter().zip(t2).any(|(a, b)| a.0 != b.0) {
        return Some(false);
    }
    let m1 = b1.series.constant();
    let m2 = b2.series.constant();
    match m1.equals(&m2) {
        Some(false) => return Some(false),
        None => return None,
        Some(true) => {}
    }
    // the identity pairing of leaves needs no root of unity
    if t1.iter().zip(t2).all(|((_, a1), (_, a2))| a1.equals(a2) == Some(true)) {
        return Some(true);
    }
    let n = b1.n.max(b2.n);
    let nr = Rat::from_integer(n.into());
    // exponents 1 - n_i/n
    let expo: Vec<u32> = t2
        .iter()
        .map(|(q, _)| ((Rat::one() - q) * &nr).to_integer().try_into().unwrap())
        .collect();
    let zeta = if n > 1 {
        Some(adjoin_root_of_unity(n, &b2.series.ctx, &SolveOptions::default()))
    } else {
        None
    };
    let mut unknown = false;
    for j in 0..n {
        let mut all = Some(true);
        for (((_, a1), (_, a2)), &ni) in t1.iter().zip(t2).zip(&expo) {
            let rot = match &zeta {
                Some(z) => a2.lift(&z.lift) * z.value.pow_u((j * ni) % n),
                None => a2.clone(),
            };
            match a1.equals(&rot) {
                Some(true) => {}
                Some(false) => {
                    all = Some(false);
                    break;
                }
                None => all = None,
            }
        }
        match all {
            Some(true) => return Some(true),
            None => unknown = true,
            Some(false) => {}
        }
    }
    if unknown {
        None
    } else {
        Some(false)
    }
}
