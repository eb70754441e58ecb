//! Simple algebraic extensions `ℚ(θ)` with a fixed complex embedding.

use super::factor::factor_rational;
use super::numeric::CBall;
use super::resultant::resultant;
use super::ring::{Field, Rat};
use super::roots::{isolate_roots, locate};
use super::unipoly::UniPoly;
use crate::error::Error;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::Arc;

/// Precision at which root discs are stored.
const ROOT_PREC: u64 = 256;

/// `ℚ(θ)` where `θ` is the root of `minpoly` selected by `root_index`
/// among the certified root discs (kept in a deterministic order).
#[derive(Debug)]
pub struct ExtensionField {
    minpoly: UniPoly<Rat>,
    root_index: usize,
    roots: Vec<CBall>,
}

impl PartialEq for ExtensionField {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly && self.root_index == o.root_index
    }
}

fn sorted_roots(p: &UniPoly<Rat>) -> Vec<CBall> {
    let mut r = isolate_roots(p, ROOT_PREC);
    r.sort_by(|a, b| {
        let (ar, ai) = a.to_f64();
        let (br, bi) = b.to_f64();
        ar.partial_cmp(&br)
            .unwrap()
            .then(ai.partial_cmp(&bi).unwrap())
    });
    r
}

impl ExtensionField {
    /// Checks irreducibility; `minpoly` is made monic.
    pub fn new(minpoly: &UniPoly<Rat>, root_index: usize) -> Result<Arc<Self>, Error> {
        let f = factor_rational(minpoly);
        if minpoly.deg() == 0 || f.len() != 1 || f[0].1 != 1 {
            return Err(Error::ReducibleMinpoly);
        }
        Ok(Self::new_irreducible(minpoly, root_index))
    }

    /// Caller guarantees irreducibility.
    pub fn new_irreducible(minpoly: &UniPoly<Rat>, root_index: usize) -> Arc<Self> {
        let minpoly = minpoly.monic();
        let roots = sorted_roots(&minpoly);
        assert!(root_index < roots.len());
        Arc::new(ExtensionField { minpoly, root_index, roots })
    }

    /// Field generated by the root of `minpoly` whose disc contains `approx`.
    /// Returns `None` when the approximation is ambiguous.
    pub fn with_root_near(minpoly: &UniPoly<Rat>, approx: &CBall) -> Option<Arc<Self>> {
        let minpoly = minpoly.monic();
        let roots = sorted_roots(&minpoly);
        let i = locate(&roots, approx).or_else(|| nearest(&roots, approx))?;
        Some(Arc::new(ExtensionField { minpoly, root_index: i, roots }))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn minpoly(&self) -> &UniPoly<Rat> {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Enclosure of `θ` at (at least) the requested precision.
    pub fn theta(&self, prec: u64) -> CBall {
        let stored = &self.roots[self.root_index];
        if prec <= ROOT_PREC {
            return stored.with_prec(prec.max(stored.prec()));
        }
        let fine = isolate_roots(&self.minpoly, prec);
        let i = locate(&fine, stored).expect("refined root matches stored disc");
        fine[i].clone()
    }

    pub fn generator(self: &Arc<Self>) -> ExtElem {
        ExtElem::new(UniPoly::var(), self.clone())
    }
}

/// Index of the root center closest to `v`, if clearly closer than the rest.
fn nearest(roots: &[CBall], v: &CBall) -> Option<usize> {
    let mut d: Vec<(f64, usize)> = roots.iter().enumerate().map(|(i, r)| (r.dist_f64(v), i)).collect();
    d.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    match d.as_slice() {
        [only] => Some(only.1),
        [a, b, ..] if a.0 * 4.0 < b.0 => Some(a.1),
        _ => None,
    }
}

/// Element of `ℚ(θ)` as a residue polynomial of degree `< deg(minpoly)`.
#[derive(Clone, Debug)]
pub struct ExtElem {
    residue: UniPoly<Rat>,
    field: Arc<ExtensionField>,
}

impl PartialEq for ExtElem {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.residue == o.residue
    }
}

impl ExtElem {
    pub fn new(residue: UniPoly<Rat>, field: Arc<ExtensionField>) -> Self {
        let residue = residue.rem(&field.minpoly);
        ExtElem { residue, field }
    }

    pub fn from_rat(r: Rat, field: &Arc<ExtensionField>) -> Self {
        ExtElem::new(UniPoly::constant(r), field.clone())
    }

    pub fn residue(&self) -> &UniPoly<Rat> {
        &self.residue
    }

    pub fn field(&self) -> &Arc<ExtensionField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// `Some(r)` if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<Rat> {
        (self.residue.deg() == 0).then(|| self.residue.coeff(0))
    }

    fn check(&self, o: &Self) {
        assert!(
            self.field == o.field,
            "arithmetic between elements of different extension fields"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        ExtElem { residue: self.residue.clone() + o.residue.clone(), field: self.field.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        ExtElem { residue: self.residue.clone() - o.residue.clone(), field: self.field.clone() }
    }

    pub fn neg(&self) -> Self {
        ExtElem { residue: -self.residue.clone(), field: self.field.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        ExtElem::new(self.residue.clone() * o.residue.clone(), self.field.clone())
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.residue.ext_gcd(&self.field.minpoly);
        debug_assert!(g.deg() == 0);
        let c = g.coeff(0).inv().ok_or(Error::DivisionByZero)?;
        Ok(ExtElem::new(s.scale(&c), self.field.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self, Error> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExtElem::from_rat(Rat::one(), &self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Ball enclosure of the element's value under the field embedding.
    pub fn eval_ball(&self, prec: u64) -> CBall {
        let th = self.field.theta(prec);
        let mut acc = CBall::zero(prec);
        for c in self.residue.coeffs().iter().rev() {
            acc = acc.mul(&th).add(&CBall::from_rat(c, prec));
        }
        acc
    }

    /// Image under `θ ↦ image`, where `image` is the old generator
    /// expressed in a larger field.
    pub fn embed(&self, image: &ExtElem) -> ExtElem {
        let mut acc = ExtElem::from_rat(Rat::zero(), &image.field);
        for c in self.residue.coeffs().iter().rev() {
            acc = acc.mul(image).add(&ExtElem::from_rat(c.clone(), &image.field));
        }
        acc
    }

    /// Characteristic polynomial `Res_θ(minpoly(θ), X − A(θ))`.
    pub fn charpoly(&self) -> UniPoly<Rat> {
        let mu: UniPoly<UniPoly<Rat>> = self.field.minpoly.map(|c| UniPoly::constant(c.clone()));
        let a: UniPoly<UniPoly<Rat>> = UniPoly::new(
            self.residue
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut v = UniPoly::constant(-c.clone());
                    if k == 0 {
                        v = v + UniPoly::var();
                    }
                    v
                })
                .collect(),
        );
        let a = if a.is_zero() { UniPoly::constant(UniPoly::var()) } else { a };
        resultant(&mu, &a).monic()
    }

    /// Minimal polynomial over ℚ (monic).
    pub fn minimal_polynomial(&self) -> UniPoly<Rat> {
        self.charpoly().squarefree_part().monic()
    }

    /// Renders the residue with generator name `θ`.
    pub fn render(&self) -> String {
        render_residue(&self.residue, "θ")
    }
}

/// Human-readable univariate polynomial, descending powers.
pub fn render_residue(p: &UniPoly<Rat>, var: &str) -> String {
    use super::ring::rat_to_string;
    use num_traits::Signed;
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for k in (0..=p.deg()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            s.push_str(&rat_to_string(&a));
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{}*{}", rat_to_string(&a), mono));
        }
    }
    s
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Decides `a == b` for elements of possibly different fields by comparing
/// minimal polynomials and then locating both values among its isolated
/// roots.
pub fn equal_across(a: &ExtElem, b: &ExtElem) -> bool {
    if a.field == b.field {
        return a.residue == b.residue;
    }
    let ma = a.minimal_polynomial();
    if ma != b.minimal_polynomial() {
        return false;
    }
    if ma.deg() == 1 {
        return true;
    }
    let mut prec = ROOT_PREC;
    loop {
        let roots = isolate_roots(&ma, prec);
        let (va, vb) = (a.eval_ball(prec), b.eval_ball(prec));
        if let (Some(i), Some(j)) = (locate(&roots, &va), locate(&roots, &vb)) {
            return i == j;
        }
        prec *= 2;
        assert!(prec <= 1 << 14, "cross-field comparison failed to separate roots");
    }
}
