use super::ring::{Field, Rat, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial, coefficients in ascending order.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial
/// is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Self::monomial(C::one(), 1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero)
    }

    pub fn lead(&self) -> C {
        self.coeffs.last().cloned().unwrap_or_else(C::zero)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> UniPoly<D> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * C::from_i64(i as i64))
                .collect(),
        )
    }

    /// `self(other(t))`
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * other.clone() + Self::constant(c.clone());
        }
        acc
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![C::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self { coeffs: v }
    }

    /// Keeps only the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// Product truncated to degree `< n`.
    pub fn mul_trunc(&self, other: &Self, n: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(n);
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// `t^n p(1/t)` for `n = deg p`.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }
}

impl<C: Field> UniPoly<C> {
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    /// Euclidean division. Panics when `d` is zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().inv().expect("leading coefficient not invertible");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![C::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k].clone() * inv.clone();
            if c.is_zero() {
                r[k] = C::zero();
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k - dd + j] = r[k - dd + j].clone() - c.clone() * dc.clone();
            }
            r[k] = C::zero();
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if the remainder is nonzero.
    pub fn div_exact_poly(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(C::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(C::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead().inv() {
            Some(i) if !r0.is_zero() => (r0.scale(&i), s0.scale(&i), t0.scale(&i)),
            _ => (r0, s0, t0),
        }
    }

    /// Yun's squarefree decomposition over a field of characteristic zero.
    /// Returns `(factor, multiplicity)` pairs with monic, pairwise coprime factors.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.div_rem(&a).0;
        let mut c = df.div_rem(&a).0;
        let mut d = c - b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            a = b.gcd(&d);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c - b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl UniPoly<Rat> {
    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_int(&self) -> UniPoly<BigInt> {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        UniPoly::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }
}

impl UniPoly<BigInt> {
    pub fn to_rat(&self) -> UniPoly<Rat> {
        self.map(|c| Rat::from_integer(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

impl<C: Ring> Add for UniPoly<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= o.coeffs.len() {
            (self.coeffs, o.coeffs)
        } else {
            (o.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Self::new(long)
    }
}

impl<C: Ring> Neg for UniPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<C: Ring> Sub for UniPoly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Ring> Mul for UniPoly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        self.mul_trunc(&o, n)
    }
}

impl<C: Ring> Zero for UniPoly<C> {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for UniPoly<C> {
    fn one() -> Self {
        UniPoly::constant(C::one())
    }
}

impl<C: Field> Ring for UniPoly<C> {
    fn from_i64(v: i64) -> Self {
        UniPoly::constant(C::from_i64(v))
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.div_exact_poly(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat_int;

    fn p(v: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(v.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn gcd_and_division() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t+1)^3 t
        let f = p(&[-1, 1]).pow(2) * p(&[1, 1]).pow(3) * p(&[0, 1]);
        let sqf = f.squarefree_decomposition();
        assert_eq!(sqf, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), p(&[0, 1]) * p(&[-1, 1]) * p(&[1, 1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, p(&[1]));
        assert_eq!(s * a + t * b, g);
    }
}
