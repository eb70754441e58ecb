//! Perfectness, regular perfectness and proximity classes.

use crate::algebra::{BiPoly, Field, Rat, Ring, Scalar};
use crate::asymptote::{to_scalar, Asymptote};
use crate::branch::{InfinityBranch, PreparedCurve};
use crate::parser::{format_poly, Style};
use crate::Error;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerfectionReason {
    MultipleBranches,
    DegreeDeficit,
    Perfect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerfectionVerdict {
    pub perfect: bool,
    pub reason: PerfectionReason,
    pub branch_count: usize,
    /// Degree of the branch when there is exactly one, else the largest.
    pub branch_degree: u32,
    pub curve_degree: u32,
}

/// One branch of degree `d` means perfect.
pub fn is_perfect(c: &PreparedCurve, branches: &[&InfinityBranch]) -> Result<PerfectionVerdict, Error> {
    let n = branches.iter().map(|b| b.n).max().unwrap_or(0);
    let (perfect, reason) = match branches.len() {
        1 if n == c.d => (true, PerfectionReason::Perfect),
        1 => (false, PerfectionReason::DegreeDeficit),
        _ => (false, PerfectionReason::MultipleBranches),
    };
    if perfect && branches[0].ramification != n {
        return Err(Error::Invariant("perfect curve with ramification above branch degree".into()));
    }
    Ok(PerfectionVerdict { perfect, reason, branch_count: branches.len(), branch_degree: n, curve_degree: c.d })
}

/// The infinity point of a polynomial whose leading form is `c·Lᵈ`.
#[derive(Clone, Debug, PartialEq)]
pub enum SinglePoint {
    /// `(1 : m : 0)`, with `L = y - m x`.
    Affine(Scalar),
    /// `(0 : 1 : 0)`, with `L = x`.
    Vertical,
}

/// Returns the unique infinity point if `f_d` is a power of a linear form.
pub fn single_infinity_point(f: &BiPoly<Scalar>) -> Option<SinglePoint> {
    let d = f.total_degree()?;
    let fd = f.homogeneous(d);
    let lead = fd.coeff(0, d);
    if lead.is_zero_value() {
        let only_x = fd.terms().all(|((i, _), _)| *i == d);
        return only_x.then_some(SinglePoint::Vertical);
    }
    // f_d(1, y) = c (y - m)^d
    let m = -(fd.coeff(1, d - 1).div(&(lead.clone() * Scalar::from_i64(d as i64))).unwrap());
    let lin = BiPoly::y() - BiPoly::x().scale(&m);
    let expect = lin.pow(d).scale(&lead);
    (expect - fd).terms().all(|(_, c)| c.is_zero_value()).then_some(SinglePoint::Affine(m))
}

fn eval_at(p: &BiPoly<Scalar>, pt: &SinglePoint) -> Scalar {
    match pt {
        SinglePoint::Affine(m) => p.eval(&Scalar::from_i64(1), m),
        SinglePoint::Vertical => p.eval(&Scalar::zero(), &Scalar::from_i64(1)),
    }
}

/// `f_d = c·Lᵈ` and `f_{d-1}` does not vanish at the point of `L`.
pub fn is_regular_perfect_scalar(f: &BiPoly<Scalar>) -> bool {
    let d = match f.total_degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    match single_infinity_point(f) {
        Some(pt) => !eval_at(&f.homogeneous(d - 1), &pt).is_zero_value(),
        None => false,
    }
}

pub fn is_regular_perfect(f: &BiPoly<Rat>) -> bool {
    is_regular_perfect_scalar(&to_scalar(f))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProximityClassDescriptor {
    pub d: u32,
    pub form_d: BiPoly<Scalar>,
    pub form_d1: BiPoly<Scalar>,
    /// Monomials `(i, j)` of degree at most `d - 2`, ordered by descending
    /// degree, then descending power of `x`.
    pub irrelevant_monomials: Vec<(u32, u32)>,
    pub dimension: usize,
}

/// Parameter names: letters other than `x` and `y`, or `c0, c1, ...` if
/// there are too many.
pub fn parameter_names(k: usize) -> Vec<String> {
    let letters: Vec<char> = ('a'..='z').filter(|c| *c != 'x' && *c != 'y').collect();
    if k <= letters.len() {
        letters[..k].iter().map(|c| c.to_string()).collect()
    } else {
        (0..k).map(|i| format!("c{i}")).collect()
    }
}

/// Monomials of degree at most `d - 2`.
pub fn irrelevant_monomials(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for deg in (0..d.saturating_sub(1)).rev() {
        for i in (0..=deg).rev() {
            out.push((i, deg - i));
        }
    }
    out
}

fn monomial_text(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        e => Some(format!("{v}^{e}")),
    };
    [part("x", i), part("y", j)].into_iter().flatten().collect::<Vec<_>>().join("*")
}

impl ProximityClassDescriptor {
    pub fn parameters(&self) -> Vec<String> {
        parameter_names(self.dimension)
    }

    /// `f_d + f_{d-1} + a*x + b*y + c` style rendering.
    pub fn family_string(&self) -> String {
        let head = format_poly(&(self.form_d.clone() + self.form_d1.clone()), Style::Plain);
        let mut out = head;
        for (name, (i, j)) in self.parameters().iter().zip(&self.irrelevant_monomials) {
            let m = monomial_text(*i, *j);
            if m.is_empty() {
                out.push_str(&format!(" + {name}"));
            } else {
                out.push_str(&format!(" + {name}*{m}"));
            }
        }
        out
    }

    /// The member with the given coefficients on the irrelevant monomials.
    pub fn member(&self, coeffs: &[Rat]) -> BiPoly<Scalar> {
        let mut p = self.form_d.clone() + self.form_d1.clone();
        for ((i, j), c) in self.irrelevant_monomials.iter().zip(coeffs) {
            p.add_term((*i, *j), Scalar::Rat(c.clone()));
        }
        p
    }

    /// `k` members with seeded random coefficients in `[-9, 9]`.
    pub fn sample_members(&self, k: usize, seed: u64) -> Vec<BiPoly<Scalar>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k)
            .map(|_| {
                let c: Vec<Rat> = (0..self.dimension)
                    .map(|_| Rat::from_integer(rng.gen_range(-9i64..=9).into()))
                    .collect();
                self.member(&c)
            })
            .collect()
    }
}

/// Divides by the coefficient of the leading term of `f_d` in the
/// `y`-first order.
fn normalized(f: &BiPoly<Scalar>) -> BiPoly<Scalar> {
    let d = f.total_degree().unwrap_or(0);
    match f.homogeneous(d).lead_term_y() {
        Some((_, c)) => f.scale(&c.inv().expect("nonzero lead")),
        None => f.clone(),
    }
}

pub fn proximity_class_scalar(f: &BiPoly<Scalar>) -> Result<ProximityClassDescriptor, Error> {
    if !is_regular_perfect_scalar(f) {
        return Err(Error::NotRegularPerfect);
    }
    let f = normalized(f);
    let d = f.total_degree().unwrap();
    let mons = irrelevant_monomials(d);
    Ok(ProximityClassDescriptor {
        d,
        form_d: f.homogeneous(d),
        form_d1: if d >= 1 { f.homogeneous(d - 1) } else { BiPoly::zero() },
        dimension: mons.len(),
        irrelevant_monomials: mons,
    })
}

pub fn proximity_class(f: &BiPoly<Rat>) -> Result<ProximityClassDescriptor, Error> {
    proximity_class_scalar(&to_scalar(f))
}

/// Same degree and the same forms of degree `d` and `d - 1` after
/// normalization.
pub fn same_class_scalar(f: &BiPoly<Scalar>, g: &BiPoly<Scalar>) -> Result<bool, Error> {
    let a = proximity_class_scalar(f)?;
    let b = proximity_class_scalar(g)?;
    if a.d != b.d {
        return Ok(false);
    }
    let diff = (a.form_d - b.form_d) + (a.form_d1 - b.form_d1);
    let same = diff.terms().all(|(_, c)| c.is_zero_value());
    Ok(same)
}

pub fn same_class(f: &BiPoly<Rat>, g: &BiPoly<Rat>) -> Result<bool, Error> {
    same_class_scalar(&to_scalar(f), &to_scalar(g))
}

/// Whether the infinity point `(1 : m : 0)` of the branch is a regular
/// point of the prepared curve.
pub fn infinity_point_regular(c: &PreparedCurve, b: &InfinityBranch) -> bool {
    let f = to_scalar(&c.f).map(|s| s.lift(&b.point.root.lift));
    let d = c.d;
    let fd = f.homogeneous(d);
    let one = Scalar::from_i64(1);
    let m = b.point.m();
    let partials = [
        fd.diff_x().eval(&one, m),
        fd.diff_y().eval(&one, m),
        f.homogeneous(d - 1).eval(&one, m),
    ];
    partials.iter().any(|v| !v.is_zero_value())
}

/// The proximity class of the asymptote, i.e. every asymptote of the
/// curve at this branch.
pub fn asymptote_family(
    c: &PreparedCurve,
    b: &InfinityBranch,
    a: &Asymptote,
) -> Result<ProximityClassDescriptor, Error> {
    if !infinity_point_regular(c, b) {
        return Err(Error::FamilyUnavailable);
    }
    let desc = proximity_class_scalar(&a.implicit_original)
        .map_err(|_| Error::Invariant("asymptote is not regular perfect at a regular point".into()))?;
    Ok(desc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_poly;

    fn p(s: &str) -> BiPoly<Rat> {
        parse_poly(s).unwrap()
    }

    #[test]
    fn regular_perfect_fixtures() {
        assert!(is_regular_perfect(&p("x^3 + 3*x^2*y + 3*x*y^2 + y^3 + 2*x^2 + y - 3")));
        assert!(!is_regular_perfect(&p("y^3 - x")));
        assert!(is_regular_perfect(&p("y^2 - x")));
        assert!(is_regular_perfect(&p("y - 2*x")));
        assert!(is_regular_perfect(&p("x^2 - y")));
        assert!(!is_regular_perfect(&p("x*y - 1")));
    }

    #[test]
    fn cubic_class() {
        let d = proximity_class(&p("x^3 + 3*x^2*y + 3*x*y^2 + y^3 + 2*x^2 + y - 3")).unwrap();
        assert_eq!(d.dimension, 3);
        assert_eq!(d.irrelevant_monomials, vec![(1, 0), (0, 1), (0, 0)]);
        assert_eq!(d.family_string(), "y^3 + 3*x*y^2 + 3*x^2*y + x^3 + 2*x^2 + a*x + b*y + c");
        let line = proximity_class(&p("y - 2*x")).unwrap();
        assert_eq!(line.dimension, 0);
        assert!(matches!(proximity_class(&p("y^3 - x")), Err(Error::NotRegularPerfect)));
    }

    #[test]
    fn class_membership() {
        assert!(same_class(&p("y^2 - x"), &p("y^2 - x + 7")).unwrap());
        assert!(same_class(&p("y^2 - x"), &p("3*y^2 - 3*x + 1")).unwrap());
        assert!(!same_class(&p("y^2 - x"), &p("y^2 - 2*x")).unwrap());
        assert!(!same_class(&p("y^2 - x"), &p("y^3 - x^2 + y^2")).unwrap());
    }

    #[test]
    fn names_skip_coordinates() {
        let n = parameter_names(24);
        assert!(!n.contains(&"x".to_string()) && !n.contains(&"y".to_string()));
        assert_eq!(parameter_names(25)[0], "c0");
    }
}
