//! Numerical corroboration: sample branch points far out, measure their
//! distance to the asymptote and check that it decays.

use crate::algebra::numeric::{CBall, Dyadic, RBall};
use crate::algebra::{BiPoly, Rat, Scalar, UniPoly};
use crate::asymptote::Asymptote;
use crate::branch::{leading_divisibility, InfinityBranch, PreparedCurve};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct SamplePlan {
    /// Values of `|z|`, strictly increasing.
    pub radii: Vec<f64>,
    /// Arguments of `z`.
    pub rays: Vec<f64>,
    pub precision: u64,
}

impl SamplePlan {
    /// Radii `10², ..., 10⁵`, rays `0`, `π` and two seeded random angles.
    pub fn with_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rays = vec![0.0, PI];
        for _ in 0..2 {
            rays.push(rng.gen_range(0.0..2.0 * PI));
        }
        SamplePlan { radii: vec![1e2, 1e3, 1e4, 1e5], rays, precision: 128 }
    }

    /// Only the rays `0` and `π`.
    pub fn real_rays(&self) -> SamplePlan {
        SamplePlan { rays: vec![0.0, PI], ..self.clone() }
    }
}

impl Default for SamplePlan {
    fn default() -> Self {
        Self::with_seed(0x5eed)
    }
}

/// A branch point `(z, r(z))` in the prepared frame.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub radius: f64,
    pub ray: f64,
    pub z: CBall,
    pub y: CBall,
}

fn exact_ray_point(radius: f64, ray: f64, prec: u64) -> CBall {
    if ray == 0.0 {
        CBall::from_f64(radius, 0.0, prec)
    } else if ray == PI {
        CBall::from_f64(-radius, 0.0, prec)
    } else {
        CBall::from_f64(radius * ray.cos(), radius * ray.sin(), prec)
    }
}

fn to_ball(s: &Scalar, prec: u64) -> CBall {
    s.to_ball(prec).with_prec(prec)
}

/// Evaluates `Σ aᵢ z^{qᵢ}` through `w = z^{1/N}`.
fn eval_terms(terms: &[(Rat, Scalar)], n: u32, w: &CBall, prec: u64) -> CBall {
    let nr = Rat::from_integer(n.into());
    let mut acc = CBall::zero(prec);
    for (q, a) in terms {
        let k: i64 = (q * &nr).to_integer().try_into().expect("small exponent");
        let p = w.powi(k).expect("w is nonzero");
        acc = acc.add(&to_ball(a, prec).mul(&p));
    }
    acc
}

/// Points of the truncated branch on every ray and radius of the plan.
pub fn sample_branch(b: &InfinityBranch, plan: &SamplePlan) -> Vec<SamplePoint> {
    let prec = plan.precision;
    let mut out = Vec::new();
    for &ray in &plan.rays {
        for &radius in &plan.radii {
            let z = exact_ray_point(radius, ray, prec);
            let w = z.principal_root(b.ramification);
            let y = eval_terms(&b.r_terms, b.ramification, &w, prec);
            out.push(SamplePoint { radius, ray, z: w.powi(b.ramification as i64).unwrap(), y });
        }
    }
    out
}

fn eval_bi(f: &BiPoly<Rat>, x: &CBall, y: &CBall, prec: u64) -> CBall {
    let mut acc = CBall::zero(prec);
    for ((i, j), c) in f.terms() {
        let t = CBall::from_rat(c, prec)
            .mul(&x.powi(*i as i64).unwrap())
            .mul(&y.powi(*j as i64).unwrap());
        acc = acc.add(&t);
    }
    acc
}

/// `|f(z, y)|` divided by the sum of the absolute values of its terms.
pub fn relative_residual(f: &BiPoly<Rat>, z: &CBall, y: &CBall) -> f64 {
    let prec = z.prec();
    let v = eval_bi(f, z, y, prec).abs_upper_f64();
    let (zr, yr) = (z.abs_upper_f64(), y.abs_upper_f64());
    let scale: f64 = f
        .terms()
        .map(|((i, j), c)| {
            rat_f64(c) * zr.powi(*i as i32) * yr.powi(*j as i32)
        })
        .sum();
    if scale == 0.0 {
        v
    } else {
        v / scale
    }
}

fn rat_f64(c: &Rat) -> f64 {
    CBall::from_rat(&c.abs(), 64).to_f64().0
}

/// Moves a branch point onto the curve with Newton steps in `y`.
fn refine_on_curve(f: &BiPoly<Rat>, p: &SamplePoint) -> Option<CBall> {
    let prec = p.z.prec();
    let fy = f.diff_y();
    let mut y = p.y.center();
    let scale = 1.0 + y.abs_upper_f64();
    for _ in 0..60 {
        let v = eval_bi(f, &p.z, &y, prec).center();
        let d = eval_bi(&fy, &p.z, &y, prec).center();
        let step = v.div(&d)?.center();
        y = y.sub(&step).center();
        if step.abs_upper_f64() <= 1e-30 * scale {
            break;
        }
    }
    let moved = y.dist_f64(&p.y);
    if moved >= 1e-2 * scale {
        return None;
    }
    // |f| / |f_y| bounds how far the root can sit from the Newton iterate,
    // so rounding in f at large |z| shows up in the radius of y.
    let v = eval_bi(f, &p.z, &y, prec);
    let d = eval_bi(&fy, &p.z, &y, prec);
    let d_lower = d.center().abs_upper_f64() - d.radius().to_f64();
    let err = if d_lower > 0.0 { 2.0 * v.abs_upper_f64() / d_lower } else { f64::INFINITY };
    let r = Dyadic::from_f64(err.min(f64::MAX));
    let (re, im) = (y.re.mid().clone(), y.im.mid().clone());
    Some(CBall::new(RBall::with_rad(re, r.clone(), prec), RBall::with_rad(im, r, prec)))
}

/// Certified upper bound on the Hermitian distance from `(x, y)` to the
/// parametrized asymptote, together with whether Gauss–Newton converged.
pub fn distance_to_asymptote(x: &CBall, y: &CBall, a: &Asymptote) -> (f64, bool) {
    let prec = x.prec();
    let px = a.param_original.0.map(|c| Scalar::Ball(to_ball(c, prec)));
    let py = a.param_original.1.map(|c| Scalar::Ball(to_ball(c, prec)));
    let (dpx, dpy) = (px.derivative(), py.derivative());
    let ev = |p: &UniPoly<Scalar>, t: &CBall| -> CBall {
        let mut acc = CBall::zero(prec);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(t).add(&c.to_ball(prec));
        }
        acc
    };
    // Seeds: the n preimages of the prepared-frame abscissa.
    let n = a.n.max(1);
    let lam = CBall::from_f64(a.lambda as f64, 0.0, prec);
    let xz = x.sub(&lam.mul(y));
    let base = xz.principal_root(n);
    let mut best: Option<(f64, bool)> = None;
    for k in 0..n {
        let ang = 2.0 * PI * k as f64 / n as f64;
        let rot = if k == 0 { CBall::one(prec) } else { CBall::from_f64(ang.cos(), ang.sin(), prec) };
        let mut t = base.mul(&rot).center();
        let mut converged = false;
        for _ in 0..80 {
            let f1 = ev(&px, &t).sub(x);
            let f2 = ev(&py, &t).sub(y);
            let j1 = ev(&dpx, &t);
            let j2 = ev(&dpy, &t);
            let num = j1.conj().mul(&f1).add(&j2.conj().mul(&f2));
            let den = j1.norm_sqr().add(&j2.norm_sqr());
            let den = CBall::new(den, RBall::zero(prec));
            let step = match num.div(&den) {
                Some(s) => s.center(),
                None => break,
            };
            t = t.sub(&step).center();
            if step.abs_upper_f64() <= 1e-32 * (1.0 + t.abs_upper_f64()) {
                converged = true;
                break;
            }
        }
        let d1 = ev(&px, &t).sub(x);
        let d2 = ev(&py, &t).sub(y);
        let dist = d1.norm_sqr().add(&d2.norm_sqr()).sqrt_upper_f64();
        if best.map_or(true, |(b, _)| dist < b) {
            best = Some((dist, converged));
        }
    }
    best.unwrap()
}

/// `(y - m x)^N` divides `f_d`.
pub fn divisibility_check(c: &PreparedCurve, b: &InfinityBranch) -> bool {
    leading_divisibility(c, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum DecayRule {
    /// Non-increasing distances whose log-log slope between the first and
    /// last radius is at most half the expected decay exponent.
    Slope,
    /// Non-increasing distances with the final one below
    /// `factor · first` (and at least `floor`).
    Relative { factor: f64, floor: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct RayReport {
    pub ray: f64,
    pub radii: Vec<f64>,
    pub distances: Vec<f64>,
    /// Points that could not be moved onto the curve use the series value.
    pub on_curve: Vec<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub rule: DecayRule,
    /// Decay exponent predicted by the first dropped term, if any.
    pub expected_exponent: Option<f64>,
    pub rays: Vec<RayReport>,
    pub pass: bool,
}

impl DecayReport {
    /// Largest distance at the last radius over the given rays.
    pub fn final_distance_on(&self, rays: &[f64]) -> f64 {
        self.rays
            .iter()
            .filter(|r| rays.contains(&r.ray))
            .filter_map(|r| r.distances.last().copied())
            .fold(0.0, f64::max)
    }
}

/// Samples the curve along the branch and checks the distance to `a` decays.
pub fn approach_decay_check(
    c: &PreparedCurve,
    b: &InfinityBranch,
    a: &Asymptote,
    plan: &SamplePlan,
    rule: DecayRule,
) -> DecayReport {
    decay(c, b, a, plan, rule, false)
}

/// As [`approach_decay_check`] for a branch of the transposed curve and an
/// asymptote given in the input frame.
pub fn approach_decay_check_transposed(
    t: &PreparedCurve,
    b: &InfinityBranch,
    a: &Asymptote,
    plan: &SamplePlan,
    rule: DecayRule,
) -> DecayReport {
    decay(t, b, a, plan, rule, true)
}

fn decay(
    c: &PreparedCurve,
    b: &InfinityBranch,
    a: &Asymptote,
    plan: &SamplePlan,
    rule: DecayRule,
    swap: bool,
) -> DecayReport {
    let plan = escalate(c, b, plan);
    let expected = b.r_terms.get(b.k).map(|(q, _)| -rat_to_f64(q));
    let mut rays = Vec::new();
    for &ray in &plan.rays {
        let sub = SamplePlan { rays: vec![ray], ..plan.clone() };
        let (distances, on_curve): (Vec<f64>, Vec<bool>) =
            sample_branch(b, &sub).iter().map(|p| point_distance(c, a, p, plan.precision, swap)).unzip();
        let pass = judge(&distances, &plan.radii, expected, rule);
        rays.push(RayReport { ray, radii: plan.radii.clone(), distances, on_curve, pass });
    }
    let pass = rays.iter().all(|r| r.pass);
    DecayReport { rule, expected_exponent: expected, rays, pass }
}

/// Distance from the curve point near `p` to `a`, raising the precision
/// until the point is known well enough. The flag tells whether the point
/// could be moved onto the curve.
fn point_distance(c: &PreparedCurve, a: &Asymptote, p: &SamplePoint, precision: u64, swap: bool) -> (f64, bool) {
    let lam = a.lambda as f64;
    let mut prec = precision;
    let mut tries = 0;
    loop {
        // the centre of z is as good a sample as z itself and carries no error
        let q = SamplePoint { z: p.z.center().with_prec(prec), y: p.y.with_prec(prec), ..p.clone() };
        let refined = refine_on_curve(&c.f, &q);
        let y = refined.clone().unwrap_or_else(|| q.y.clone());
        let x = q.z.add(&CBall::from_f64(lam, 0.0, prec).mul(&y));
        let dist = if swap { distance_to_asymptote(&y, &x, a) } else { distance_to_asymptote(&x, &y, a) };
        let rad = x.radius().to_f64().max(y.radius().to_f64());
        if rad <= 1e-3 * dist.0.max(1e-30) || tries >= 2 {
            return (dist.0, refined.is_some());
        }
        prec *= 2;
        tries += 1;
    }
}

/// Distance to `a` from the curve point of branch `b` at `z = radius·e^{i ray}`,
/// with no escalation of the radius. `transposed` is set for branches of
/// the transposed curve.
pub fn distance_at(c: &PreparedCurve, b: &InfinityBranch, a: &Asymptote, radius: f64, ray: f64, transposed: bool) -> f64 {
    let plan = SamplePlan { radii: vec![radius], rays: vec![ray], precision: 128 };
    point_distance(c, a, &sample_branch(b, &plan)[0], plan.precision, transposed).0
}

fn rat_to_f64(q: &Rat) -> f64 {
    CBall::from_rat(q, 64).to_f64().0
}

fn judge(d: &[f64], radii: &[f64], expected: Option<f64>, rule: DecayRule) -> bool {
    if d.is_empty() {
        return false;
    }
    // Distances under the working-precision noise floor, which grows with
    // the radius, count as zero.
    let d: Vec<f64> = d.iter().zip(radii).map(|(&v, &r)| if v <= 1e-20 * r.max(1.0) { 0.0 } else { v }).collect();
    let monotone = d.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9));
    if !monotone {
        return false;
    }
    let (first, last) = (d[0], *d.last().unwrap());
    if last == 0.0 {
        return true;
    }
    match rule {
        DecayRule::Relative { factor, floor } => last < (factor * first).max(floor),
        DecayRule::Slope => {
            let q = match expected {
                Some(q) => q,
                None => return false,
            };
            if radii.len() < 2 {
                return true;
            }
            let slope = (last.ln() - first.ln()) / (radii[radii.len() - 1].ln() - radii[0].ln());
            slope <= -q / 2.0
        }
    }
}

/// Scales the radii up (at most ten times by 10) until the truncated
/// series is close to the curve at the smallest radius and the first
/// dropped term outweighs the rest of the known tail.
fn escalate(c: &PreparedCurve, b: &InfinityBranch, plan: &SamplePlan) -> SamplePlan {
    let mut p = plan.clone();
    for _ in 0..10 {
        let probe = SamplePlan { radii: vec![p.radii[0]], ..p.clone() };
        let worst = sample_branch(b, &probe)
            .iter()
            .map(|s| relative_residual(&c.f, &s.z, &s.y))
            .fold(0.0, f64::max);
        if worst < 1e-3 && tail_dominated(c, b, &probe) {
            break;
        }
        p.radii = p.radii.iter().map(|r| r * 10.0).collect();
    }
    p
}

/// Whether the true gap between the curve and the truncated series at the
/// sample points matches the first dropped term to within a quarter. Before
/// that the distance can dip through cancellation with later terms.
fn tail_dominated(c: &PreparedCurve, b: &InfinityBranch, plan: &SamplePlan) -> bool {
    let Some(first) = b.r_terms.get(b.k) else { return true };
    let prec = plan.precision;
    sample_branch(b, plan).iter().all(|p| {
        let z = p.z.center();
        let w = z.principal_root(b.ramification);
        let q = SamplePoint { z: z.clone(), y: eval_terms(&b.r_terms, b.ramification, &w, prec), ..p.clone() };
        let Some(y) = refine_on_curve(&c.f, &q) else { return false };
        let kept = eval_terms(&b.r_terms[..b.k], b.ramification, &w, prec);
        let lead = eval_terms(std::slice::from_ref(first), b.ramification, &w, prec);
        y.sub(&kept).sub(&lead).abs_upper_f64() <= 0.25 * lead.abs_upper_f64()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptote::build_asymptote;
    use crate::branch::{all_branches, prepare_curve};
    use crate::parser::parse_poly;
    use crate::puiseux::TruncationPolicy;

    fn setup(s: &str) -> (PreparedCurve, Vec<(InfinityBranch, Asymptote)>) {
        let c = prepare_curve(&parse_poly(s).unwrap()).unwrap();
        let mut out = Vec::new();
        for (_, bs) in all_branches(&c, &TruncationPolicy::default()).unwrap() {
            for b in bs {
                let a = build_asymptote(&c, &b).unwrap();
                out.push((b, a));
            }
        }
        (c, out)
    }

    const EX: &str = "2*y^3*x - y^4 + 2*y^2*x - y^3 - 2*x^3 + x^2*y + 3";

    #[test]
    fn line_branch_distance_matches_point_line_formula() {
        let (_, pairs) = setup(EX);
        let (b, a) = pairs.iter().find(|(b, _)| b.ramification == 1).unwrap();
        let plan = SamplePlan { radii: vec![100.0], rays: vec![0.0], precision: 128 };
        let p = &sample_branch(b, &plan)[0];
        let (d, ok) = distance_to_asymptote(&p.z, &p.y, a);
        assert!(ok);
        // r(100) - 200 ≈ 3/8 · 10⁻⁶, point-line distance divides by √5
        let oracle = (p.y.to_f64().0 - 200.0).abs() / 5f64.sqrt();
        assert!((d - oracle).abs() < 1e-12, "{d} vs {oracle}");
    }

    #[test]
    fn decay_passes_and_wrong_pairing_fails() {
        let (c, pairs) = setup(EX);
        let plan = SamplePlan::default();
        for (b, a) in &pairs {
            let r = approach_decay_check(&c, b, a, &plan, DecayRule::Slope);
            assert!(r.pass, "{r:?}");
        }
        let b2 = &pairs.iter().find(|(b, _)| b.ramification == 3).unwrap().0;
        let a1 = &pairs.iter().find(|(b, _)| b.ramification == 1).unwrap().1;
        assert!(!approach_decay_check(&c, b2, a1, &plan, DecayRule::Slope).pass);
    }
}
