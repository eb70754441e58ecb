//! Dense polynomials over a prime field `F_p`, `p < 2^62`.
//!
//! Only what the Zassenhaus factorization needs: arithmetic, gcd,
//! modular exponentiation and Cantor–Zassenhaus splitting.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyP {
    pub c: Vec<u64>,
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl PolyP {
    pub fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyP { c }
    }

    pub fn one() -> Self {
        PolyP { c: vec![1] }
    }

    pub fn x() -> Self {
        PolyP { c: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self, p: u64) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + b) % p
            })
            .collect();
        PolyP::new(v)
    }

    pub fn sub(&self, o: &Self, p: u64) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        PolyP::new(v)
    }

    pub fn mul(&self, o: &Self, p: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyP { c: vec![] };
        }
        let mut v = vec![0u128; self.c.len() + o.c.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = (v[i + j] + a as u128 * b as u128) % pp;
            }
        }
        PolyP::new(v.into_iter().map(|x| x as u64).collect())
    }

    pub fn scale(&self, k: u64, p: u64) -> Self {
        PolyP::new(self.c.iter().map(|&a| mulmod(a, k, p)).collect())
    }

    pub fn monic(&self, p: u64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.lead(), p), p)
    }

    pub fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero());
        let dd = d.deg();
        if self.c.len() <= dd {
            return (PolyP { c: vec![] }, self.clone());
        }
        let inv = invmod(d.lead(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = mulmod(r[k], inv, p);
            if c == 0 {
                continue;
            }
            q[k - dd] = c;
            for (j, &dc) in d.c.iter().enumerate() {
                let t = mulmod(c, dc, p);
                r[k - dd + j] = (r[k - dd + j] + p - t) % p;
            }
        }
        r.truncate(dd);
        (PolyP::new(q), PolyP::new(r))
    }

    pub fn rem(&self, d: &Self, p: u64) -> Self {
        self.divrem(d, p).1
    }

    pub fn gcd(&self, o: &Self, p: u64) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Self, p: u64) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyP::one(), PolyP { c: vec![] });
        let (mut t0, mut t1) = (PolyP { c: vec![] }, PolyP::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, p), p);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, p), p);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = invmod(r0.lead(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    pub fn derivative(&self, p: u64) -> Self {
        PolyP::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| mulmod(a, i as u64 % p, p))
                .collect(),
        )
    }

    /// `base^e mod m`
    pub fn powmod(base: &Self, mut e: u128, m: &Self, p: u64) -> Self {
        let mut r = PolyP::one().rem(m, p);
        let mut b = base.rem(m, p);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b, p).rem(m, p);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b, p).rem(m, p);
            }
        }
        r
    }
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &PolyP, p: u64) -> Vec<(PolyP, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyP::x();
    let mut h = x.clone();
    let mut i = 0;
    while rest.deg() >= 2 * (i + 1) {
        i += 1;
        h = PolyP::powmod(&h, p as u128, &rest, p);
        let g = rest.gcd(&h.sub(&x, p), p);
        if g.deg() > 0 {
            out.push((g.clone(), i));
            rest = rest.divrem(&g, p).0;
            h = h.rem(&rest, p);
        }
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting (odd `p`).
fn equal_degree(f: &PolyP, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    if f.deg() == d {
        return vec![f.clone()];
    }
    let n = f.deg();
    loop {
        let a = PolyP::new((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f, p);
        let split = if g.deg() > 0 && g.deg() < n {
            g
        } else {
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1)/2)
            let mut frob = a.rem(f, p);
            let mut acc = frob.clone();
            for _ in 1..d {
                frob = PolyP::powmod(&frob, p as u128, f, p);
                acc = acc.mul(&frob, p).rem(f, p);
            }
            let b = PolyP::powmod(&acc, (p as u128 - 1) / 2, f, p).sub(&PolyP::one(), p);
            let g = b.gcd(f, p);
            if g.deg() == 0 || g.deg() == n {
                continue;
            }
            g
        };
        let other = f.divrem(&split, p).0.monic(p);
        let mut out = equal_degree(&split, d, p, rng);
        out.extend(equal_degree(&other, d, p, rng));
        return out;
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`.
pub fn factor_squarefree(f: &PolyP, p: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}
