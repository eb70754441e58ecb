//! Factorization over the rationals.
//!
//! Univariate: Zassenhaus (Cantor–Zassenhaus mod p, multifactor Hensel
//! lifting, subset recombination). Bivariate: Kronecker substitution on top
//! of the univariate routine.

use super::bipoly::BiPoly;
use super::modp::{is_prime, PolyP};
use super::ring::Rat;
use super::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Upper bound on recombination attempts before giving up on a split.
const MAX_SUBSETS: usize = 200_000;

/// Factorization result with a completeness flag: when recombination hits
/// its cap, some reported factors may still be reducible.
#[derive(Clone, Debug)]
pub struct Factorization<P> {
    pub factors: Vec<(P, u32)>,
    pub complete: bool,
}

/// Monic irreducible factors over ℚ with multiplicities, sorted by degree.
pub fn factor_rational(u: &UniPoly<Rat>) -> Vec<(UniPoly<Rat>, u32)> {
    factor_rational_flagged(u).factors
}

pub fn factor_rational_flagged(u: &UniPoly<Rat>) -> Factorization<UniPoly<Rat>> {
    let mut out = Vec::new();
    let mut complete = true;
    if u.deg() == 0 {
        return Factorization { factors: out, complete };
    }
    for (sf, m) in u.squarefree_decomposition() {
        if sf.deg() == 0 {
            continue;
        }
        let (fs, ok) = zassenhaus(&sf.primitive_int());
        complete &= ok;
        for f in fs {
            out.push((f.to_rat().monic(), m));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    Factorization { factors: out, complete }
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let mut r = c.mod_floor(m);
    if &r * 2 > *m {
        r -= m;
    }
    r
}

fn to_modp(f: &UniPoly<BigInt>, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    PolyP::new(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn from_modp(f: &PolyP) -> UniPoly<BigInt> {
    UniPoly::new(f.c.iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce(f: &UniPoly<BigInt>, m: &BigInt) -> UniPoly<BigInt> {
    UniPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn inv_mod_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    e.x.mod_floor(m)
}

/// Factors a primitive squarefree integer polynomial into irreducibles.
/// The flag is false if recombination was capped.
fn zassenhaus(f: &UniPoly<BigInt>) -> (Vec<UniPoly<BigInt>>, bool) {
    let n = f.deg();
    if n <= 1 {
        return (vec![f.clone()], true);
    }
    if f.coeff(0).is_zero() {
        // squarefree, so x divides exactly once
        let rest = UniPoly::new(f.coeffs()[1..].to_vec());
        let (mut fs, ok) = zassenhaus(&rest);
        fs.insert(0, UniPoly::new(vec![BigInt::zero(), BigInt::one()]));
        return (fs, ok);
    }
    let lc = f.lead();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // pick among a few good primes the one giving the fewest modular factors
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut cand = 1009u64;
    let mut tried = 0;
    while tried < 5 {
        cand += 2;
        if !is_prime(cand) || (&lc % BigInt::from(cand)).is_zero() {
            continue;
        }
        let fp = to_modp(f, cand).monic(cand);
        if fp.deg() != n || fp.gcd(&fp.derivative(cand), cand).deg() > 0 {
            continue;
        }
        tried += 1;
        let fs = super::modp::factor_squarefree(&fp, cand, &mut rng);
        if best.as_ref().map_or(true, |(_, b)| fs.len() < b.len()) {
            best = Some((cand, fs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modf) = best.expect("a good prime exists");
    if modf.len() == 1 {
        return (vec![f.clone()], true);
    }

    // Mignotte-style bound on factor coefficients, times the leading coefficient
    let norm1: BigInt = f.coeffs().iter().map(|c| c.abs()).sum();
    let bound = lc.abs() * norm1 * (BigInt::one() << n) * 2;
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modf, p, k);
    recombine(f, lifted, &modulus)
}

/// Lifts monic `f ≡ lc * Π g_i (mod p)` to monic factors mod `p^k`.
fn hensel_lift(f: &UniPoly<BigInt>, gs: &[PolyP], p: u64, k: u32) -> Vec<UniPoly<BigInt>> {
    let r = gs.len();
    let pb = BigInt::from(p);
    let pk = pb.pow(k);
    let lc_inv = inv_mod_big(&f.lead(), &pk);
    let fm = reduce(&f.scale(&lc_inv), &pk);

    // s_i = (Π_{j≠i} g_j)^{-1} mod g_i
    let mut s = Vec::with_capacity(r);
    for i in 0..r {
        let mut prod = PolyP::one();
        for (j, g) in gs.iter().enumerate() {
            if j != i {
                prod = prod.mul(g, p).rem(&gs[i], p);
            }
        }
        let (_, si, _) = prod.ext_gcd(&gs[i], p);
        s.push(si);
    }

    let mut lifted: Vec<UniPoly<BigInt>> = gs.iter().map(from_modp).collect();
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let mut prod = UniPoly::constant(BigInt::one());
        for g in &lifted {
            prod = reduce(&(prod * g.clone()), &next);
        }
        let e = reduce(&(fm.clone() - prod), &next);
        let e = UniPoly::new(e.coeffs().iter().map(|c| c / &pj).collect());
        let ep = to_modp(&e, p);
        for i in 0..r {
            let delta = ep.mul(&s[i], p).rem(&gs[i], p);
            let d = from_modp(&delta).scale(&pj);
            lifted[i] = lifted[i].clone() + d;
        }
        pj = next;
    }
    lifted
}

fn primitive_big(g: &UniPoly<BigInt>) -> UniPoly<BigInt> {
    let c = g.content();
    let sign = if g.lead().is_negative() { -BigInt::one() } else { BigInt::one() };
    UniPoly::new(g.coeffs().iter().map(|x| x / &c * &sign).collect())
}

fn exact_quotient(f: &UniPoly<BigInt>, g: &UniPoly<BigInt>) -> Option<UniPoly<BigInt>> {
    let (q, r) = f.to_rat().div_rem(&g.to_rat());
    if !r.is_zero() || !q.coeffs().iter().all(|c| c.denom().is_one()) {
        return None;
    }
    Some(UniPoly::new(q.coeffs().iter().map(|c| c.to_integer()).collect()))
}

fn recombine(
    f: &UniPoly<BigInt>,
    mut lifted: Vec<UniPoly<BigInt>>,
    m: &BigInt,
) -> (Vec<UniPoly<BigInt>>, bool) {
    let mut out = Vec::new();
    let mut cur = f.clone();
    let mut size = 1;
    let mut budget = MAX_SUBSETS;
    'outer: while 2 * size <= lifted.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if budget == 0 {
                out.push(cur);
                return (out, false);
            }
            budget -= 1;
            let lc = cur.lead();
            let mut g = UniPoly::constant(lc.clone());
            for &i in &idx {
                g = reduce(&(g * lifted[i].clone()), m);
            }
            let g = UniPoly::new(g.coeffs().iter().map(|c| sym_mod(c, m)).collect());
            let g = primitive_big(&g);
            let const_ok = g.coeff(0).is_zero() || (cur.coeff(0) % g.coeff(0)).is_zero();
            if const_ok && (&lc % g.lead()).is_zero() {
                if let Some(q) = exact_quotient(&cur, &g) {
                    out.push(g);
                    cur = q;
                    let keep: Vec<_> = lifted
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !idx.contains(i))
                        .map(|(_, g)| g.clone())
                        .collect();
                    lifted = keep;
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, lifted.len()) {
                break;
            }
        }
        size += 1;
    }
    if cur.deg() > 0 {
        out.push(primitive_big(&cur));
    }
    (out, true)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factors over ℚ of a bivariate polynomial with multiplicities.
/// Factors are normalized by [`BiPoly::primitive`]; constants are dropped.
pub fn factor_bivariate(f: &BiPoly<Rat>) -> Factorization<BiPoly<Rat>> {
    let mut out: Vec<(BiPoly<Rat>, u32)> = Vec::new();
    let mut complete = true;
    if f.is_zero() || f.is_constant() {
        return Factorization { factors: out, complete };
    }
    let mut p = f.primitive();

    // content in x (gcd of the y-coefficients) and in y
    let ym = p.to_y_major();
    let cx = ym
        .coeffs()
        .iter()
        .fold(UniPoly::<Rat>::zero(), |acc, c| acc.gcd(c));
    let xm = p.swap().to_y_major();
    let cy = xm
        .coeffs()
        .iter()
        .fold(UniPoly::<Rat>::zero(), |acc, c| acc.gcd(c));
    for (c, lift) in [(cx, false), (cy, true)] {
        if c.deg() == 0 {
            continue;
        }
        let r = factor_rational_flagged(&c);
        complete &= r.complete;
        for (g, m) in r.factors {
            let b = if lift { BiPoly::from_uni_y(&g) } else { BiPoly::from_uni_x(&g) };
            p = p.div_exact_bi(&b.pow(m)).expect("content divides");
            out.push((b.primitive(), m));
        }
    }

    if p.total_degree().unwrap_or(0) > 0 {
        let r = kronecker(&p.primitive());
        complete &= r.complete;
        out.extend(r.factors);
    }

    // merge equal factors
    let mut merged: Vec<(BiPoly<Rat>, u32)> = Vec::new();
    for (g, m) in out {
        if let Some(e) = merged.iter_mut().find(|(h, _)| *h == g) {
            e.1 += m;
        } else {
            merged.push((g, m));
        }
    }
    merged.sort_by(|a, b| {
        (a.0.degree(), a.0.deg_y())
            .cmp(&(b.0.degree(), b.0.deg_y()))
            .then_with(|| format!("{:?}", a.0).cmp(&format!("{:?}", b.0)))
    });
    Factorization { factors: merged, complete }
}

/// Kronecker substitution `y -> x^D` with `D = deg_x + 1`. Valid inverse
/// for any true factor, so recombining the univariate factors and testing
/// divisibility recovers the bivariate factorization.
fn kronecker(p: &BiPoly<Rat>) -> Factorization<BiPoly<Rat>> {
    let d = p.deg_x() + 1;
    let mut coeffs = vec![Rat::zero(); (p.deg_x() + d * p.deg_y() + 1) as usize];
    for (&(i, j), c) in p.terms() {
        coeffs[(i + d * j) as usize] = c.clone();
    }
    let uni = UniPoly::new(coeffs);
    let uf = factor_rational_flagged(&uni);
    let mut list: Vec<UniPoly<Rat>> = Vec::new();
    for (g, m) in uf.factors {
        for _ in 0..m {
            list.push(g.clone());
        }
    }
    let inverse = |g: &UniPoly<Rat>| -> Option<BiPoly<Rat>> {
        let mut b = BiPoly::zero();
        for (e, c) in g.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e as u32;
            b.add_term((e % d, e / d), c.clone());
        }
        (b.deg_x() < d).then(|| b.primitive())
    };

    let mut out: Vec<(BiPoly<Rat>, u32)> = Vec::new();
    let mut cur = p.clone();
    let mut size = 1;
    let mut budget = MAX_SUBSETS;
    let mut complete = uf.complete;
    'outer: while size <= list.len() && 2 * size <= list.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if budget == 0 {
                complete = false;
                break 'outer;
            }
            budget -= 1;
            let g = idx
                .iter()
                .fold(UniPoly::constant(Rat::one()), |acc, &i| acc * list[i].clone());
            if let Some(b) = inverse(&g) {
                if b.total_degree().unwrap_or(0) > 0 {
                    if let Some(q) = cur.div_exact_bi(&b) {
                        out.push((b, 1));
                        cur = q;
                        list = list
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| !idx.contains(i))
                            .map(|(_, g)| g.clone())
                            .collect();
                        continue 'outer;
                    }
                }
            }
            if !next_combination(&mut idx, list.len()) {
                break;
            }
        }
        size += 1;
    }
    if cur.total_degree().unwrap_or(0) > 0 {
        out.push((cur.primitive(), 1));
    }
    Factorization { factors: out, complete }
}
