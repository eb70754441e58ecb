//! The coefficient type used by the curve engine: an exact rational, an
//! element of a simple extension, or a complex ball in numeric mode.

use super::field::{ExtElem, ExtensionField};
use super::numeric::CBall;
use super::ring::{rat_to_string, Field, Rat, Ring};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(Rat),
    Alg(ExtElem),
    Ball(CBall),
}

/// How existing coefficients must be rewritten after a new root is adjoined.
#[derive(Clone, Debug)]
pub enum Lift {
    /// The root lives in the current field.
    Identity,
    /// Image of the previous generator in the new field.
    Field(ExtElem),
    /// Switch to ball arithmetic at this precision.
    Numeric(u64),
}

impl Scalar {
    pub fn rat(r: Rat) -> Self {
        Scalar::Rat(r)
    }

    /// Wraps an extension element, collapsing it to a rational if possible.
    pub fn alg(e: ExtElem) -> Self {
        match e.as_rational() {
            Some(r) => Scalar::Rat(r),
            None if e.is_zero() => Scalar::Rat(Rat::zero()),
            None => Scalar::Alg(e),
        }
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Scalar::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<ExtensionField>> {
        match self {
            Scalar::Alg(e) => Some(e.field()),
            _ => None,
        }
    }

    pub fn is_ball(&self) -> bool {
        matches!(self, Scalar::Ball(_))
    }

    pub fn to_ball(&self, prec: u64) -> CBall {
        match self {
            Scalar::Rat(r) => CBall::from_rat(r, prec),
            Scalar::Alg(e) => e.eval_ball(prec),
            Scalar::Ball(b) => b.clone(),
        }
    }

    pub fn to_c64(&self) -> (f64, f64) {
        self.to_ball(128).to_f64()
    }

    pub fn lift(&self, l: &Lift) -> Scalar {
        match (self, l) {
            (Scalar::Alg(e), Lift::Field(img)) => Scalar::alg(e.embed(img)),
            (Scalar::Rat(_), Lift::Numeric(_)) => self.clone(),
            (Scalar::Alg(e), Lift::Numeric(p)) => Scalar::Ball(e.eval_ball(*p)),
            _ => self.clone(),
        }
    }

    /// Exact zero test; for balls, whether the ball contains zero.
    pub fn is_zero_value(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Alg(e) => e.is_zero(),
            Scalar::Ball(b) => b.contains_zero(),
        }
    }

    /// Equality that also works across different extension fields. Balls
    /// give `None` when the comparison is inconclusive.
    pub fn equals(&self, o: &Scalar) -> Option<bool> {
        match (self, o) {
            (Scalar::Ball(_), _) | (_, Scalar::Ball(_)) => {
                let d = self.to_ball(256).sub(&o.to_ball(256));
                if d.contains_zero() {
                    None
                } else {
                    Some(false)
                }
            }
            (Scalar::Alg(a), Scalar::Alg(b)) => Some(super::field::equal_across(a, b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Some(a == b),
            _ => Some(false),
        }
    }

    /// Parenthesized rendering suitable as a coefficient.
    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(r) => rat_to_string(r),
            Scalar::Alg(e) => format!("({})", e.render()),
            Scalar::Ball(b) => format!("~{b}"),
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Alg(e)) => (Scalar::Alg(ExtElem::from_rat(x.clone(), e.field())), b.clone()),
            (Scalar::Alg(e), Scalar::Rat(x)) => (a.clone(), Scalar::Alg(ExtElem::from_rat(x.clone(), e.field()))),
            (Scalar::Ball(x), _) if !b.is_ball() => (a.clone(), Scalar::Ball(b.to_ball(x.prec()))),
            (_, Scalar::Ball(y)) if !a.is_ball() => (Scalar::Ball(a.to_ball(y.prec())), b.clone()),
            _ => (a.clone(), b.clone()),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (Scalar::Alg(a), Scalar::Alg(b)) => a == b,
            (Scalar::Ball(a), Scalar::Ball(b)) => a.overlaps(b),
            (Scalar::Ball(_), _) | (_, Scalar::Ball(_)) => self.equals(o) != Some(false),
            _ => false,
        }
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::Rat(r)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        match Scalar::promote(&self, &o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Alg(a), Scalar::Alg(b)) => Scalar::alg(a.add(&b)),
            (Scalar::Ball(a), Scalar::Ball(b)) => Scalar::Ball(a.add(&b)),
            _ => unreachable!(),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        self + (-o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Alg(a) => Scalar::Alg(a.neg()),
            Scalar::Ball(a) => Scalar::Ball(a.neg()),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        match Scalar::promote(&self, &o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Alg(a), Scalar::Alg(b)) => Scalar::alg(a.mul(&b)),
            (Scalar::Ball(a), Scalar::Ball(b)) => Scalar::Ball(a.mul(&b)),
            _ => unreachable!(),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_value()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rat(Rat::one())
    }
}

impl Ring for Scalar {
    fn from_i64(v: i64) -> Self {
        Scalar::Rat(Rat::from_i64(v))
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        Field::div(self, other)
    }
}

impl Field for Scalar {
    fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rat(r) => r.inv().map(Scalar::Rat),
            Scalar::Alg(e) => e.inv().ok().map(Scalar::alg),
            Scalar::Ball(b) => b.inv().map(Scalar::Ball),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", rat_to_string(r)),
            Scalar::Alg(e) => write!(f, "{e}"),
            Scalar::Ball(b) => write!(f, "~{b}"),
        }
    }
}
