#![allow(dead_code)]

use gasym::algebra::ring::{rat, rat_int};
use gasym::algebra::{BiPoly, Rat};
use gasym::parse_poly;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const QUARTIC_CUSP: &str = "2*y^3*x - y^4 + 2*y^2*x - y^3 - 2*x^3 + x^2*y + 3";
pub const INTRO_CUBIC: &str = "-y*x - y^2 - x^3 + 2*x^2*y + x^2 - 2*y";
pub const PARAM_QUARTIC: &str = "-y + x^2 - 2*x*y^2 + y^4";
pub const REGULAR_CUBIC: &str = "x^3 + 3*x^2*y + 3*x*y^2 + y^3 + 2*x^2 + y - 3";

/// The worked examples, all with rational infinity points.
pub fn fixtures() -> Vec<(&'static str, BiPoly<Rat>)> {
    [
        QUARTIC_CUSP,
        INTRO_CUBIC,
        PARAM_QUARTIC,
        REGULAR_CUBIC,
        "y^2 - x",
        "y^3 - x",
        "x*y - 1",
        "y - x^2",
        "y^3 - x^2",
        "y^5 - x^2",
        "y^5 - x^3",
        "y^7 - x^4",
    ]
    .into_iter()
    .map(|s| (s, parse_poly(s).unwrap()))
    .collect()
}

/// Random curves of degree 2 to 5 whose leading form splits into rational
/// linear factors, so every infinity point is rational.
pub fn random_corpus(seed: u64, count: usize) -> Vec<BiPoly<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slopes = [rat_int(0), rat_int(1), rat_int(-1), rat_int(2), rat(1, 2), rat(-3, 2)];
    let mut out = Vec::new();
    while out.len() < count {
        let d: u32 = rng.gen_range(2..=5);
        let mut fd = BiPoly::constant(rat_int(rng.gen_range(1..=3)));
        let mut left = d;
        while left > 0 {
            let e = rng.gen_range(1..=left.min(3));
            let factor = if rng.gen_bool(0.15) {
                BiPoly::x()
            } else {
                let m = slopes.choose(&mut rng).unwrap();
                BiPoly::y() - BiPoly::x().scale(m)
            };
            fd = fd * factor.pow(e);
            left -= e;
        }
        let mut f = fd;
        for _ in 0..rng.gen_range(1..=4) {
            let k = rng.gen_range(0..d);
            let i = rng.gen_range(0..=k);
            let c = rat_int(rng.gen_range(-4..=4));
            f = f + BiPoly::monomial(c, i, k - i);
        }
        if f.total_degree() == Some(d) {
            out.push(f);
        }
    }
    out
}
