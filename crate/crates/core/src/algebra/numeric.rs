//! Arbitrary-precision ball arithmetic.
//!
//! A [`RBall`] is a dyadic midpoint with a dyadic radius; every operation
//! returns a ball that contains all results of applying the operation to
//! points of the input balls. [`CBall`] is a rectangular complex ball.

use super::ring::Rat;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Mantissa bits kept for radii.
const RAD_BITS: u64 = 30;

/// Exact value `mant * 2^exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// `2^e`
    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 || !v.is_finite() {
            return Self::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic::new(self.mant.abs(), self.exp)
    }

    pub fn neg(&self) -> Self {
        Dyadic::new(-&self.mant, self.exp)
    }

    fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the most significant bit, `floor(log2|x|)`.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.bits() as i64 - 1)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic::new(self.mant.clone(), self.exp + k)
    }

    /// Truncates toward zero to `prec` significant bits, returning the
    /// rounded value and an upper bound for the error.
    pub fn round(&self, prec: u64) -> (Self, Dyadic) {
        let b = self.bits();
        if b <= prec {
            return (self.clone(), Dyadic::zero());
        }
        let s = b - prec;
        let m = if self.mant.is_negative() {
            -((-&self.mant) >> s as usize)
        } else {
            &self.mant >> s as usize
        };
        (Dyadic::new(m, self.exp + s as i64), Dyadic::pow2(self.exp + s as i64))
    }

    /// Rounds a nonnegative value upward to `prec` bits.
    pub fn round_up(&self, prec: u64) -> Self {
        let b = self.bits();
        if b <= prec {
            return self.clone();
        }
        let s = b - prec;
        let m = (&self.mant >> s as usize) + 1;
        Dyadic::new(m, self.exp + s as i64)
    }

    /// `self / o` truncated to `prec` bits, with error bound.
    pub fn div(&self, o: &Self, prec: u64) -> (Self, Dyadic) {
        assert!(!o.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        // shift numerator so the integer quotient carries `prec` bits
        let shift = (prec as i64 + o.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << shift as usize;
        let q = &num / &o.mant;
        let e = self.exp - o.exp - shift;
        let (r, err) = Dyadic::new(q, e).round(prec);
        (r, err.add(&Dyadic::pow2(e)))
    }

    /// Upper bound of `self / o` for nonnegative `self`, positive `o`.
    pub fn div_up(&self, o: &Self) -> Self {
        let (q, err) = self.div(o, RAD_BITS + 2);
        q.abs().add(&err).round_up(RAD_BITS)
    }

    pub fn from_rat(r: &Rat, prec: u64) -> (Self, Dyadic) {
        let n = Dyadic::new(r.numer().clone(), 0);
        let d = Dyadic::new(r.denom().clone(), 0);
        if r.denom().is_one() {
            return n.round(prec);
        }
        n.div(&d, prec)
    }

    pub fn to_rat(&self) -> Rat {
        if self.exp >= 0 {
            Rat::from_integer(&self.mant << self.exp as usize)
        } else {
            Rat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.bits() as i64;
        let (m, e) = if b > 60 {
            (&self.mant >> (b - 60) as usize, self.exp + b - 60)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let half = (e / 2) as i32;
        mf * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    }

    pub fn cmp_value(&self, o: &Self) -> Ordering {
        let d = self.sub(o);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn max(&self, o: &Self) -> Self {
        if self.cmp_value(o) == Ordering::Less {
            o.clone()
        } else {
            self.clone()
        }
    }
}

/// Real ball `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct RBall {
    mid: Dyadic,
    rad: Dyadic,
    prec: u64,
}

impl RBall {
    pub fn exact(mid: Dyadic, prec: u64) -> Self {
        let (m, err) = mid.round(prec);
        RBall { mid: m, rad: err.round_up(RAD_BITS), prec }
    }

    pub fn with_rad(mid: Dyadic, rad: Dyadic, prec: u64) -> Self {
        let (m, err) = mid.round(prec);
        RBall { mid: m, rad: rad.abs().add(&err).round_up(RAD_BITS), prec }
    }

    pub fn zero(prec: u64) -> Self {
        RBall { mid: Dyadic::zero(), rad: Dyadic::zero(), prec }
    }

    pub fn from_rat(r: &Rat, prec: u64) -> Self {
        let (m, err) = Dyadic::from_rat(r, prec);
        RBall { mid: m, rad: err.round_up(RAD_BITS), prec }
    }

    pub fn from_f64(v: f64, prec: u64) -> Self {
        Self::exact(Dyadic::from_f64(v), prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u64 {
        self.prec
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        RBall::with_rad(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs().cmp_value(&self.rad) != Ordering::Greater
    }

    pub fn abs_upper(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    pub fn abs_lower(&self) -> Dyadic {
        let v = self.mid.abs().sub(&self.rad);
        if v.is_negative() {
            Dyadic::zero()
        } else {
            v
        }
    }

    fn join_rad(a: &Dyadic, b: &Dyadic, err: &Dyadic) -> Dyadic {
        a.add(b).add(err).round_up(RAD_BITS)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let (m, err) = self.mid.add(&o.mid).round(prec);
        RBall { mid: m, rad: Self::join_rad(&self.rad, &o.rad, &err), prec }
    }

    pub fn neg(&self) -> Self {
        RBall { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let (m, err) = self.mid.mul(&o.mid).round(prec);
        let r = self
            .mid
            .abs()
            .mul(&o.rad)
            .add(&o.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        RBall { mid: m, rad: Self::join_rad(&r, &Dyadic::zero(), &err), prec }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        let prec = self.prec;
        let (m, err) = Dyadic::from_int(1).div(&self.mid, prec);
        // |1/x - 1/mid| <= rad / (|mid| (|mid| - rad))
        let low = self.abs_lower();
        let denom = self.mid.abs().mul(&low);
        let r = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            self.rad.div_up(&denom)
        };
        Some(RBall { mid: m, rad: Self::join_rad(&r, &Dyadic::zero(), &err), prec })
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Upper bound of `sqrt` of an upper bound, as a float.
    pub fn sqrt_upper_f64(&self) -> f64 {
        let v = self.abs_upper().to_f64();
        let s = v.sqrt();
        s * (1.0 + 4.0 * f64::EPSILON)
    }
}

/// Complex ball with rectangular enclosure.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: RBall,
    pub im: RBall,
}

impl CBall {
    pub fn new(re: RBall, im: RBall) -> Self {
        CBall { re, im }
    }

    pub fn zero(prec: u64) -> Self {
        CBall::new(RBall::zero(prec), RBall::zero(prec))
    }

    pub fn one(prec: u64) -> Self {
        CBall::from_rat(&Rat::one(), prec)
    }

    pub fn from_rat(r: &Rat, prec: u64) -> Self {
        CBall::new(RBall::from_rat(r, prec), RBall::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: u64) -> Self {
        CBall::new(RBall::from_f64(re, prec), RBall::from_f64(im, prec))
    }

    /// Exact point with zero radius.
    pub fn point(re: Dyadic, im: Dyadic, prec: u64) -> Self {
        CBall::new(RBall::exact(re, prec), RBall::exact(im, prec))
    }

    pub fn prec(&self) -> u64 {
        self.re.prec.max(self.im.prec)
    }

    pub fn with_prec(&self, prec: u64) -> Self {
        CBall::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    /// Same midpoint, radius dropped.
    pub fn center(&self) -> Self {
        CBall::point(self.re.mid.clone(), self.im.mid.clone(), self.prec())
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.sub(o).contains_zero()
    }

    /// Radius bound: max of the real and imaginary radii.
    pub fn radius(&self) -> Dyadic {
        self.re.rad.max(&self.im.rad)
    }

    pub fn add(&self, o: &Self) -> Self {
        CBall::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Self) -> Self {
        CBall::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Self {
        CBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> Self {
        CBall::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall::new(re, im)
    }

    pub fn scale_real(&self, r: &RBall) -> Self {
        CBall::new(self.re.mul(r), self.im.mul(r))
    }

    /// `|z|^2` as a real ball.
    pub fn norm_sqr(&self) -> RBall {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        let ni = n.inv()?;
        Some(self.conj().scale_real(&ni))
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn powi(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CBall::one(self.prec());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Some(acc)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Upper bound for `|z|` as a float.
    pub fn abs_upper_f64(&self) -> f64 {
        self.norm_sqr().sqrt_upper_f64()
    }

    /// Midpoint distance `|a - b|` as a float (not certified).
    pub fn dist_f64(&self, o: &Self) -> f64 {
        let d = self.center().sub(&o.center());
        d.norm_sqr().to_f64().sqrt()
    }

    /// Principal `k`-th root, computed by Newton iteration from a float seed.
    /// The result is a point approximation (radius reflects only the last step).
    pub fn principal_root(&self, k: u32) -> CBall {
        let prec = self.prec();
        if k == 1 {
            return self.clone();
        }
        let (re, im) = self.to_f64();
        let r = re.hypot(im);
        if r == 0.0 {
            return CBall::zero(prec);
        }
        let th = im.atan2(re) / k as f64;
        let rk = r.powf(1.0 / k as f64);
        let mut z = CBall::from_f64(rk * th.cos(), rk * th.sin(), prec);
        let target = self.center();
        let kb = CBall::from_rat(&Rat::from_integer(BigInt::from(k)), prec);
        let iters = 8 + (prec as f64 / 40.0).log2().max(0.0) as usize * 2;
        for _ in 0..iters {
            // z <- z - (z^k - a) / (k z^(k-1))
            let zk1 = z.powi(k as i64 - 1).unwrap();
            let f = zk1.mul(&z).sub(&target);
            let df = zk1.mul(&kb);
            match f.div(&df) {
                Some(step) => z = z.sub(&step).center(),
                None => break,
            }
        }
        z
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if self.im.contains_zero() && self.im.mid.is_zero() {
            write!(f, "{re:.12e}")
        } else {
            write!(f, "({re:.12e} {} {:.12e}*I)", if im < 0.0 { '-' } else { '+' }, im.abs())
        }
    }
}

/// Number of bits needed for `|v|`.
pub fn int_bits(v: &BigInt) -> u64 {
    v.abs().bits()
}

/// `ceil(log2(n))` helper for sizing working precision.
pub fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// Exact rational value of a dyadic rational `m / 2^k`.
pub fn dyadic_rat(m: i64, k: u32) -> Rat {
    Rat::new(BigInt::from(m), BigInt::one() << k as usize)
}

pub fn is_even(v: &BigInt) -> bool {
    v.is_even()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    #[test]
    fn rational_enclosure() {
        let third = RBall::from_rat(&rat(1, 3), 128);
        let three = RBall::from_rat(&rat(3, 1), 128);
        let one = third.mul(&three);
        let diff = one.sub(&RBall::from_rat(&rat(1, 1), 128));
        assert!(diff.contains_zero());
        assert!(diff.abs_upper().to_f64() < 1e-35);
    }

    #[test]
    fn inverse_contains_truth() {
        let x = RBall::with_rad(Dyadic::from_int(3), Dyadic::pow2(-20), 96);
        let ix = x.inv().unwrap();
        let truth = RBall::from_rat(&rat(1, 3), 200);
        assert!(ix.sub(&truth).contains_zero());
        assert!(RBall::zero(64).inv().is_none());
    }

    #[test]
    fn complex_roots_of_unity() {
        let minus_one = CBall::from_rat(&rat(-1, 1), 128);
        let i = minus_one.principal_root(2);
        let (re, im) = i.to_f64();
        assert!(re.abs() < 1e-30 && (im - 1.0).abs() < 1e-30);
        let w = CBall::one(128).principal_root(3);
        assert!(w.dist_f64(&CBall::one(128)) < 1e-30);
    }

    #[test]
    fn f64_roundtrip() {
        for v in [1.5, -0.1, 1e-300, 12345.678] {
            assert_eq!(Dyadic::from_f64(v).to_f64(), v);
        }
    }
}
