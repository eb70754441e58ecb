use gasym::algebra::ring::rat;
use gasym::algebra::{BiPoly, Rat};
use gasym::{format_poly, parse_poly, Style};
use proptest::prelude::*;

fn sparse_poly() -> impl Strategy<Value = BiPoly<Rat>> {
    let term = ((0u32..=8, 0u32..=8), -99i64..=99, 1i64..=99)
        .prop_filter("degree at most 8", |((i, j), _, _)| i + j <= 8)
        .prop_map(|(m, n, d)| (m, rat(n, d)));
    prop::collection::vec(term, 0..=12).prop_map(BiPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn format_then_parse_is_identity(p in sparse_poly()) {
        let text = format_poly(&p, Style::Plain);
        prop_assert_eq!(parse_poly(&text).unwrap(), p, "{}", text);
    }
}

#[test]
fn curves_from_the_worked_examples_parse() {
    let cases = [
        "-y*x - y^2 - x^3 + 2*x^2*y + x^2 - 2*y",
        "y - 2*x^2 + 3/2*x + 15/8",
        "y - x/2 + 1/8",
        "2*y^3*x - y^4 + 2*y^2*x - y^3 - 2*x^3 + x^2*y + 3",
        "y - 2*x",
        "-x^2 + y^3 + y^2 + 1/3*y + 1/27",
        "-y + x^2 - 2*x*y^2 + y^4",
        "y^2 - x",
        "y^3 - x",
        "x^3 + 3*x^2*y + 3*x*y^2 + y^3 + 2*x^2 + y - 3",
        "y^3 - x^2 + y^2 - y + 1/27",
        "y^3 - x^2 + y^2 + 1/3*y - 2*x + 1/27",
        "y^3 - x^2 + y^2",
    ];
    for s in cases {
        let p = parse_poly(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(parse_poly(&format_poly(&p, Style::Plain)).unwrap(), p);
    }
}

#[test]
fn rejects_malformed_input() {
    for s in ["", "x +", "x^-1", "1/x", "2 3", "x**2", "z + 1", "(x", "x^(1/2)"] {
        assert!(parse_poly(s).is_err(), "{s:?} should be rejected");
    }
}
