use super::ring::{Field, Rat, Ring};
use super::unipoly::UniPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent pair `(deg_x, deg_y)`.
pub type Monomial = (u32, u32);

/// Sparse bivariate polynomial. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Ring> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(c: C) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        Self::from_terms([((i, j), c)])
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree(&self) -> u32 {
        self.total_degree().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&m| m == (0, 0))
    }

    /// Homogeneous component of degree `k`.
    pub fn homogeneous(&self, k: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        BiPoly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    pub fn eval(&self, x: &C, y: &C) -> C {
        self.terms.iter().fold(C::zero(), |acc, ((i, j), c)| {
            acc + c.clone() * x.pow_u(*i) * y.pow_u(*j)
        })
    }

    /// Evaluates at `y = v`, giving a polynomial in `x`.
    pub fn eval_y(&self, v: &C) -> UniPoly<C> {
        let mut out = vec![C::zero(); self.deg_x() as usize + 1];
        for ((i, j), c) in &self.terms {
            let i = *i as usize;
            out[i] = out[i].clone() + c.clone() * v.pow_u(*j);
        }
        UniPoly::new(out)
    }

    /// Evaluates at `x = v`, giving a polynomial in `y`.
    pub fn eval_x(&self, v: &C) -> UniPoly<C> {
        self.swap().eval_y(v)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }

    /// `self(px, py)`.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let dx = self.deg_x();
        let dy = self.deg_y();
        let xp: Vec<Self> = (0..=dx).map(|k| px.pow(k)).collect();
        let yp: Vec<Self> = (0..=dy).map(|k| py.pow(k)).collect();
        let mut acc = Self::zero();
        for ((i, j), c) in &self.terms {
            acc = acc + (xp[*i as usize].clone() * yp[*j as usize].clone()).scale(c);
        }
        acc
    }

    pub fn diff_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|((i, j), c)| ((i - 1, *j), c.clone() * C::from_i64(*i as i64))),
        )
    }

    pub fn diff_y(&self) -> Self {
        self.swap().diff_x().swap()
    }

    /// View as a polynomial in `y` whose coefficients are polynomials in `x`.
    pub fn to_y_major(&self) -> UniPoly<UniPoly<C>>
    where
        C: Field,
    {
        let mut rows: Vec<Vec<C>> = vec![Vec::new(); self.deg_y() as usize + 1];
        for ((i, j), c) in &self.terms {
            let row = &mut rows[*j as usize];
            if row.len() <= *i as usize {
                row.resize(*i as usize + 1, C::zero());
            }
            row[*i as usize] = c.clone();
        }
        UniPoly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn from_y_major(p: &UniPoly<UniPoly<C>>) -> Self
    where
        C: Field,
    {
        let mut out = Self::zero();
        for (j, row) in p.coeffs().iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }

    /// Embeds a polynomial in `x`.
    pub fn from_uni_x(p: &UniPoly<C>) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    /// Embeds a polynomial in `y`.
    pub fn from_uni_y(p: &UniPoly<C>) -> Self {
        Self::from_uni_x(p).swap()
    }

    /// Interprets a polynomial that only involves `x`.
    pub fn to_uni_x(&self) -> Option<UniPoly<C>> {
        if self.terms.keys().any(|m| m.1 != 0) {
            return None;
        }
        Some(self.eval_y(&C::zero()))
    }

    /// Leading term in the order that compares the `y` exponent first, then `x`.
    pub fn lead_term_y(&self) -> Option<(Monomial, C)> {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (*j, *i))
            .map(|(m, c)| (*m, c.clone()))
    }
}

impl<C: Field> BiPoly<C> {
    /// Divides by the coefficient of the leading term in the `y`-first order,
    /// so that term becomes monic.
    pub fn monic_y(&self) -> Self {
        match self.lead_term_y() {
            Some((_, c)) => match c.inv() {
                Some(i) => self.scale(&i),
                None => self.clone(),
            },
            None => Self::zero(),
        }
    }

    /// Exact division. Returns `None` if `d` does not divide `self`.
    pub fn div_exact_bi(&self, d: &Self) -> Option<Self> {
        let ((di, dj), dc) = d.lead_term_y()?;
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some(((ri, rj), rc)) = rem.lead_term_y() {
            if ri < di || rj < dj {
                return None;
            }
            let c = rc * dinv.clone();
            let t = Self::monomial(c, ri - di, rj - dj);
            rem = rem - t.clone() * d.clone();
            // cancels exactly; ball coefficients may leave a residue straddling zero
            rem.terms.remove(&(ri, rj));
            quo = quo + t;
        }
        Some(quo)
    }
}

impl BiPoly<Rat> {
    /// Integer-content-1 normalization with a positive coefficient on the
    /// leading term in the `y`-first order.
    pub fn primitive(&self) -> BiPoly<Rat> {
        if self.is_zero() {
            return Self::zero();
        }
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rat::from_integer(den.clone())).to_integer()));
        let mut s = Rat::new(den, num);
        if self.lead_term_y().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }
}

impl<C: Ring> Add for BiPoly<C> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Ring> Neg for BiPoly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        BiPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Ring> Sub for BiPoly<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<C: Ring> Mul for BiPoly<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Ring> Zero for BiPoly<C> {
    fn zero() -> Self {
        BiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for BiPoly<C> {
    fn one() -> Self {
        BiPoly::constant(C::one())
    }
}

impl<C: Field> Ring for BiPoly<C> {
    fn from_i64(v: i64) -> Self {
        BiPoly::constant(C::from_i64(v))
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_exact_bi(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat_int;

    fn x() -> BiPoly<Rat> {
        BiPoly::x()
    }
    fn y() -> BiPoly<Rat> {
        BiPoly::y()
    }
    fn k(c: i64) -> BiPoly<Rat> {
        BiPoly::constant(rat_int(c))
    }

    #[test]
    fn homogeneous_parts() {
        let f = y().pow(2) - x() + k(3);
        assert_eq!(f.degree(), 2);
        assert_eq!(f.homogeneous(2), y().pow(2));
        assert_eq!(f.homogeneous(1), -x());
        assert_eq!(f.homogeneous(0), k(3));
    }

    #[test]
    fn exact_division() {
        let a = y() - x() * k(2);
        let b = x() * y() + k(1);
        let prod = a.clone() * b.clone();
        assert_eq!(prod.div_exact_bi(&a), Some(b.clone()));
        assert_eq!((prod + k(1)).div_exact_bi(&a), None);
    }

    #[test]
    fn primitive_normalization() {
        let f = (y() * k(-2) + x() * k(4)).scale(&crate::algebra::ring::rat(1, 3));
        assert_eq!(f.primitive(), y() - x() * k(2));
    }

    #[test]
    fn shear_compose() {
        let f = y() - x().pow(2);
        let g = f.compose(&(x() + y()), &y());
        assert_eq!(g, y() - (x() + y()).pow(2));
    }
}
