use gasym::algebra::factor::factor_rational;
use gasym::algebra::numeric::CBall;
use gasym::algebra::resultant::{implicitize_monomial, resultant, resultant_sylvester};
use gasym::algebra::ring::{rat, rat_int};
use gasym::algebra::{BiPoly, ExtElem, ExtensionField, Rat, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly<Rat>> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(UniPoly::new)
}

fn nonconstant(max_deg: usize) -> impl Strategy<Value = UniPoly<Rat>> {
    uni(max_deg).prop_filter("nonconstant", |p| p.degree().unwrap_or(0) >= 1)
}

/// Polynomials in `t` whose coefficients are small bivariate polynomials.
fn bi_in_t(max_deg: usize) -> impl Strategy<Value = UniPoly<BiPoly<Rat>>> {
    let coeff = prop::collection::vec(((0u32..=1, 0u32..=1), -3i64..=3), 0..=3)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(m, c)| (m, rat_int(c)))));
    prop::collection::vec(coeff, 1..=max_deg + 1).prop_map(UniPoly::new)
}

fn eval_ball(p: &UniPoly<Rat>, t: &CBall) -> CBall {
    let prec = t.prec();
    p.coeffs().iter().rev().fold(CBall::zero(prec), |acc, c| acc.mul(t).add(&CBall::from_rat(c, prec)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_is_multiplicative(p in bi_in_t(3), q in bi_in_t(2), r in bi_in_t(2)) {
        let lhs = resultant(&p, &(q.clone() * r.clone()));
        let rhs = resultant(&p, &q) * resultant(&p, &r);
        prop_assert!(lhs == rhs || lhs == -rhs);
    }

    #[test]
    fn monomial_implicitization_is_root_product(n in 1u32..=4, p in uni(3), xn in -5i64..=5, xd in 1i64..=3, y in small_rat()) {
        prop_assume!(xn != 0);
        let f = implicitize_monomial(n, &p).unwrap();
        let x = rat(xn, xd);
        // lhs: F(x, y) as a ball
        let prec = 256;
        let lhs = f.terms().fold(CBall::zero(prec), |acc, ((i, j), c)| {
            acc.add(&CBall::from_rat(c, prec)
                .mul(&CBall::from_rat(&x, prec).powi(*i as i64).unwrap())
                .mul(&CBall::from_rat(&y, prec).powi(*j as i64).unwrap()))
        });
        // rhs: product over the n-th roots of x, up to the normalizing scalar
        let base = CBall::from_rat(&x, prec).principal_root(n);
        let mut prod = CBall::one(prec);
        for k in 0..n {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            let alpha = base.mul(&CBall::from_f64(a.cos(), a.sin(), prec));
            prod = prod.mul(&CBall::from_rat(&y, prec).sub(&eval_ball(&p, &alpha)));
        }
        // F is normalized, so the product is off by its leading coefficient
        let lead = f.lead_term_y().unwrap().1;
        let scaled = prod.mul(&CBall::from_rat(&lead, prec));
        // the roots of unity come from f64 trigonometry
        let tol = 1e-12 * (1.0 + scaled.abs_upper_f64());
        prop_assert!(lhs.sub(&scaled).abs_upper_f64() <= tol, "{:?} vs {:?}", lhs.to_f64(), scaled.to_f64());
    }

    #[test]
    fn factorization_expands_back(ps in prop::collection::vec(nonconstant(2), 1..=3)) {
        let f = ps.iter().fold(UniPoly::constant(Rat::one()), |acc, p| acc * p.clone());
        let fac = factor_rational(&f);
        let back = fac.iter().fold(UniPoly::constant(Rat::one()), |acc, (p, e)| acc * p.pow(*e));
        // factors are monic or primitive: compare up to the leading coefficient
        prop_assert!(!back.is_zero());
        let ratio = f.lead() / back.lead();
        prop_assert_eq!(back.scale(&ratio), f);
    }

    #[test]
    fn field_arithmetic_agrees_with_balls(a in uni(2), b in uni(2), idx in 0usize..3) {
        // Q(θ) with θ³ = 2 (one real, two complex embeddings)
        let mu = UniPoly::new(vec![rat_int(-2), Rat::zero(), Rat::zero(), Rat::one()]);
        let k = ExtensionField::new(&mu, idx).unwrap();
        let (ea, eb) = (ExtElem::new(a.clone(), k.clone()), ExtElem::new(b.clone(), k.clone()));
        let prec = 200;
        let th = k.theta(prec);
        let (ba, bb) = (eval_ball(&a, &th), eval_ball(&b, &th));
        let close = |x: &CBall, y: &CBall| x.sub(y).abs_upper_f64() <= 1e-40 * (1.0 + y.abs_upper_f64());
        prop_assert!(close(&ea.mul(&eb).eval_ball(prec), &ba.mul(&bb)));
        prop_assert!(close(&ea.add(&eb).eval_ball(prec), &ba.add(&bb)));
        if !eb.is_zero() {
            prop_assert!(close(&ea.div(&eb).unwrap().eval_ball(prec), &ba.div(&bb).unwrap()));
        }
    }
}

#[test]
fn sylvester_resultant_eliminates_t() {
    // the parabola (t, t^2 + 1) gives y - x^2 - 1
    let x = BiPoly::<Rat>::x();
    let y = BiPoly::<Rat>::y();
    let one = BiPoly::constant(Rat::one());
    let p = UniPoly::new(vec![x.clone(), -one.clone()]);
    let q = UniPoly::new(vec![y.clone() - one.clone(), BiPoly::zero(), -one]);
    let r = resultant_sylvester(&p, &q).unwrap();
    assert_eq!(r, y - x.pow(2) - BiPoly::constant(Rat::one()));
}
