mod common;

use common::{fixtures, random_corpus};
use gasym::algebra::ring::rat_int;
use gasym::algebra::{BiPoly, Rat, Scalar};
use gasym::branch::{all_branches, branches_convergent, leading_divisibility, prepare_curve};
use gasym::parse_poly;
use gasym::puiseux::{puiseux_solutions, residual_valuation, TruncationPolicy};
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn corpus_curve() -> impl Strategy<Value = BiPoly<Rat>> {
    any::<u64>().prop_map(|s| random_corpus(s, 1).pop().unwrap())
}

fn rendered(g: &BiPoly<Scalar>) -> Vec<(u32, Vec<(Rat, String)>)> {
    let mut out: Vec<_> = puiseux_solutions(g, &TruncationPolicy::default())
        .unwrap()
        .into_iter()
        .map(|c| {
            let terms = c.representative.terms.iter().map(|(e, a)| (e.clone(), a.to_string())).collect();
            (c.class_size, terms)
        })
        .collect();
    out.sort();
    out
}

fn check_classes(f: &BiPoly<Rat>) -> Result<(), TestCaseError> {
    let c = prepare_curve(f).unwrap();
    let g = c.g();
    let classes = puiseux_solutions(&g, &TruncationPolicy::default()).unwrap();
    let total: u32 = classes.iter().map(|k| k.class_size).sum();
    prop_assert_eq!(total, g.deg_x(), "class sizes of {:?}", f);
    for k in &classes {
        let s = &k.representative;
        prop_assert_eq!(k.class_size, s.ramification);
        // the least common denominator of the exponents is N itself
        let lcd = s.terms.iter().fold(1u32, |acc, (e, _)| acc.lcm(&e.denom().to_u32().unwrap()));
        prop_assert_eq!(lcd, s.ramification, "ramification not minimal");
        prop_assert!(s.terms.windows(2).all(|w| w[0].0 < w[1].0));
        match (residual_valuation(&g, s), &s.truncation) {
            (None, _) => {}
            (Some(v), Some(t)) => prop_assert!(v >= *t, "residual {} below truncation {}", v, t),
            (Some(v), None) => prop_assert!(false, "exact series leaves residual of order {}", v),
        }
    }
    Ok(())
}

fn check_branches(f: &BiPoly<Rat>) -> Result<(), TestCaseError> {
    let c = prepare_curve(f).unwrap();
    let groups = all_branches(&c, &TruncationPolicy::default()).unwrap();
    prop_assert!(!groups.is_empty());
    let mut all = Vec::new();
    for (p, bs) in &groups {
        prop_assert!(!bs.is_empty(), "infinity point without a branch");
        let at_point: u32 = bs.iter().map(|b| b.ramification).sum();
        prop_assert_eq!(at_point, p.multiplicity);
        for b in bs {
            prop_assert!(leading_divisibility(&c, b));
            prop_assert!(b.n <= b.ramification && b.ramification <= c.d);
            prop_assert!(b.reduced.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(b.reduced.last().map_or(true, |&v| v <= b.n));
            all.push(b.clone());
        }
    }
    for a in &all {
        prop_assert_eq!(branches_convergent(a, a), Some(true));
        for b in &all {
            prop_assert_eq!(branches_convergent(a, b), branches_convergent(b, a));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn puiseux_classes_are_complete_and_certified(f in corpus_curve()) {
        check_classes(&f)?;
    }

    #[test]
    fn scaling_the_curve_leaves_the_classes_alone(f in corpus_curve(), k in prop::sample::select(vec![-3i64, 2, 5, 7])) {
        let c = prepare_curve(&f).unwrap();
        let g = c.g();
        let scaled = g.scale(&Scalar::from(rat_int(k)));
        prop_assert_eq!(rendered(&g), rendered(&scaled));
    }

    #[test]
    fn branch_invariants_hold(f in corpus_curve()) {
        check_branches(&f)?;
    }
}

#[test]
fn fixtures_satisfy_the_engine_invariants() {
    for (s, f) in fixtures() {
        check_classes(&f).unwrap_or_else(|e| panic!("{s}: {e}"));
        check_branches(&f).unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn convergence_is_transitive_on_a_shifted_parabola_family() {
    let branch = |s: &str| {
        let c = prepare_curve(&parse_poly(s).unwrap()).unwrap();
        let mut groups = all_branches(&c, &TruncationPolicy::default()).unwrap();
        assert_eq!(groups.len(), 1);
        groups.pop().unwrap().1.pop().unwrap()
    };
    let family: Vec<_> = ["y^2 - x", "y^2 - x + 7", "y^2 - x - 1/3"].iter().map(|s| branch(s)).collect();
    let line = branch("y - x");
    for a in &family {
        for b in &family {
            assert_eq!(branches_convergent(a, b), Some(true));
        }
        assert_eq!(branches_convergent(a, &line), Some(false));
    }
}
