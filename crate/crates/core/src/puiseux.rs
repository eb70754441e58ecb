//! Newton–Puiseux expansion of the solutions of `g(y, z) = 0` at `z = 0`.
//!
//! Polynomials in `(y, z)` are stored as `BiPoly<Scalar>` whose first
//! exponent is the power of `y` and whose second is the power of `z`.

use crate::algebra::{BiPoly, Lift, Rat, Scalar, SolveOptions, UniPoly};
use crate::algebra::ring::{Field, Ring};
use crate::algebra::solve::{adjoin_root_of_unity, solve, AlgRoot, Ctx};
use crate::Error;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A truncated Puiseux series `φ(z) = Σ aᵢ z^{eᵢ}`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    /// `(exponent, coefficient)` with strictly increasing exponents.
    pub terms: Vec<(Rat, Scalar)>,
    pub ramification: u32,
    /// Every term with exponent below this value is present and exact.
    /// `None` means the series is an exact finite solution.
    pub truncation: Option<Rat>,
    pub ctx: Ctx,
}

impl PuiseuxSeries {
    /// Whether coefficients were computed in ball arithmetic.
    pub fn is_numeric(&self) -> bool {
        self.ctx.is_numeric()
    }

    /// Constant term, zero if absent.
    pub fn constant(&self) -> Scalar {
        match self.terms.first() {
            Some((e, c)) if e.is_zero() => c.clone(),
            _ => Scalar::zero(),
        }
    }

    /// Terms of `r(z) = z φ(1/z)` as `(1 - e, a)`, in decreasing exponent order.
    pub fn r_terms(&self) -> Vec<(Rat, Scalar)> {
        self.terms
            .iter()
            .map(|(e, c)| (Rat::one() - e, c.clone()))
            .collect()
    }

    /// The series as a polynomial in `w = z^{1/N}`.
    pub fn in_w(&self) -> UniPoly<Scalar> {
        let n = Rat::from_integer(self.ramification.into());
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let k = (e * &n).to_integer();
            let k: usize = k.try_into().expect("exponent fits");
            if out.len() <= k {
                out.resize(k + 1, Scalar::zero());
            }
            out[k] = c.clone();
        }
        UniPoly::new(out)
    }
}

/// A conjugacy class of Puiseux solutions, given by one representative.
#[derive(Clone, Debug)]
pub struct PuiseuxClass {
    pub representative: PuiseuxSeries,
    pub class_size: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Guarantee {
    /// Expand until the residual equation is regular, then keep every
    /// exponent up to 1 plus the requested number of guard terms.
    UntilRegular,
    /// Expand until every exponent below the given order is known.
    FixedOrder(Rat),
}

#[derive(Clone, Debug)]
pub struct TruncationPolicy {
    pub guarantee: Guarantee,
    pub max_polygon_steps: usize,
    pub guard_terms: usize,
    pub solve: SolveOptions,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            guarantee: Guarantee::UntilRegular,
            max_polygon_steps: 64,
            guard_terms: 2,
            solve: SolveOptions::default(),
        }
    }
}

/// Context matching the coefficients of `g`.
pub fn context_of(g: &BiPoly<Scalar>) -> Ctx {
    let mut ctx = Ctx::Rational;
    for (_, c) in g.terms() {
        match c {
            Scalar::Ball(b) => return Ctx::Numeric(b.prec()),
            Scalar::Alg(e) => ctx = Ctx::Field(e.field().clone()),
            Scalar::Rat(_) => {}
        }
    }
    ctx
}

/// `g(y, 0)` as a polynomial in `y`.
pub fn at_origin(g: &BiPoly<Scalar>) -> UniPoly<Scalar> {
    let mut out = vec![Scalar::zero(); g.deg_x() as usize + 1];
    for ((i, j), c) in g.terms() {
        if *j == 0 {
            out[*i as usize] = c.clone();
        }
    }
    UniPoly::new(out)
}

/// All Puiseux solutions of `g` at `z = 0`, grouped into conjugacy classes.
pub fn puiseux_solutions(g: &BiPoly<Scalar>, policy: &TruncationPolicy) -> Result<Vec<PuiseuxClass>, Error> {
    let g0 = at_origin(g);
    if g0.deg() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let ctx = context_of(g);
    let mut out = Vec::new();
    for root in solve(&g0, &ctx, &policy.solve) {
        out.extend(expand_at(g, &root, policy)?);
    }
    Ok(out)
}

/// Classes whose constant term is the root `m` of `g(y, 0)`.
pub fn expand_at(g: &BiPoly<Scalar>, m: &AlgRoot, policy: &TruncationPolicy) -> Result<Vec<PuiseuxClass>, Error> {
    let g = lift_poly(g, &m.lift);
    let h = substitute(&g, &m.value, 0, 1, 0);
    let mut terms = Vec::new();
    if !m.value.is_zero_value() {
        terms.push((Rat::zero(), m.value.clone()));
    }
    let st = State { h, terms, e: Rat::zero(), q: 1, ctx: m.ctx.clone(), steps: 0 };
    let mut out = Vec::new();
    expand(st, policy, &mut out)?;
    Ok(out)
}

fn lift_poly(p: &BiPoly<Scalar>, l: &Lift) -> BiPoly<Scalar> {
    match l {
        Lift::Identity => p.clone(),
        _ => p.map(|c| c.lift(l)),
    }
}

/// `W^{-M} H(W^p (c + Y), W^q)`.
fn substitute(h: &BiPoly<Scalar>, c: &Scalar, p: u32, q: u32, m: u32) -> BiPoly<Scalar> {
    let dy = h.deg_x() as usize;
    let mut cp = vec![Scalar::one()];
    for k in 1..=dy {
        cp.push(cp[k - 1].clone() * c.clone());
    }
    let mut out = BiPoly::zero();
    for ((i, j), a) in h.terms() {
        let w = i * p + j * q - m;
        let mut binom = Rat::one();
        for l in 0..=*i {
            let coef = a.clone() * Scalar::Rat(binom.clone()) * cp[(i - l) as usize].clone();
            out.add_term((l, w), coef);
            binom = binom * Rat::from_integer((i - l).into()) / Rat::from_integer((l + 1).into());
        }
    }
    out
}

struct State {
    h: BiPoly<Scalar>,
    terms: Vec<(Rat, Scalar)>,
    e: Rat,
    q: u32,
    ctx: Ctx,
    steps: usize,
}

impl State {
    fn lifted(&self, root: &AlgRoot) -> State {
        State {
            h: lift_poly(&self.h, &root.lift),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.lift(&root.lift))).collect(),
            e: self.e.clone(),
            q: self.q,
            ctx: root.ctx.clone(),
            steps: self.steps,
        }
    }

    fn emit(&self, terms: Vec<(Rat, Scalar)>, truncation: Option<Rat>, out: &mut Vec<PuiseuxClass>) {
        out.push(PuiseuxClass {
            representative: PuiseuxSeries { terms, ramification: self.q, truncation, ctx: self.ctx.clone() },
            class_size: self.q,
        });
    }
}

/// Order of `H(Y, 0)` at `Y = 0`.
fn y_order(h: &BiPoly<Scalar>) -> Option<u32> {
    h.terms().filter(|((_, j), _)| *j == 0).map(|((i, _), _)| *i).min()
}

fn expand(st: State, policy: &TruncationPolicy, out: &mut Vec<PuiseuxClass>) -> Result<(), Error> {
    let r = y_order(&st.h).ok_or_else(|| Error::Invariant("residual vanishes at W = 0".into()))?;
    if r == 0 {
        return Err(Error::Invariant("residual has no root at Y = 0".into()));
    }
    let mut st = st;
    if !st.h.terms().any(|((i, _), _)| *i == 0) {
        // Y = 0 solves the residual equation exactly.
        st.emit(st.terms.clone(), None, out);
        if r == 1 {
            return Ok(());
        }
        st.h = BiPoly::from_terms(st.h.terms().map(|((i, j), c)| ((i - 1, *j), c.clone())));
        return expand(st, policy, out);
    }
    if r == 1 {
        let (terms, trunc) = regular(&st, policy);
        st.emit(terms, trunc, out);
        return Ok(());
    }
    if st.steps >= policy.max_polygon_steps {
        return Err(Error::IncompleteExpansion { steps: st.steps });
    }
    for edge in newton_edges(&st.h, r) {
        let psi = edge.characteristic(&st.h);
        for t0 in solve(&psi, &st.ctx, &policy.solve) {
            let s1 = st.lifted(&t0);
            let c = principal_root(&t0.value, edge.q, &s1.ctx, &policy.solve);
            let s2 = s1.lifted(&c);
            let h = substitute(&s2.h, &c.value, edge.p, edge.q, edge.m);
            let de = Rat::new(edge.p.into(), (edge.q * st.q).into());
            let e = &s2.e + de;
            let mut terms = s2.terms.clone();
            terms.push((e.clone(), c.value.clone()));
            let child = State { h, terms, e, q: s2.q * edge.q, ctx: s2.ctx, steps: st.steps + 1 };
            expand(child, policy, out)?;
        }
    }
    Ok(())
}

struct Edge {
    i1: u32,
    p: u32,
    q: u32,
    m: u32,
    points: Vec<u32>,
}

impl Edge {
    /// `Ψ(T) = Σ a_{i,j} T^{(i - i1)/q}` over the lattice points on the edge.
    fn characteristic(&self, h: &BiPoly<Scalar>) -> UniPoly<Scalar> {
        let mut c = Vec::new();
        for &i in &self.points {
            let j = (self.m - self.p * i) / self.q;
            let k = ((i - self.i1) / self.q) as usize;
            if c.len() <= k {
                c.resize(k + 1, Scalar::zero());
            }
            c[k] = h.coeff(i, j);
        }
        UniPoly::new(c)
    }
}

/// Edges of negative slope of the lower Newton polygon over `0 ≤ i ≤ r`.
fn newton_edges(h: &BiPoly<Scalar>, r: u32) -> Vec<Edge> {
    let mut low: Vec<Option<u32>> = vec![None; r as usize + 1];
    for ((i, j), _) in h.terms() {
        if *i <= r {
            let s = &mut low[*i as usize];
            *s = Some(s.map_or(*j, |v| v.min(*j)));
        }
    }
    let pts: Vec<(i64, i64)> = low
        .iter()
        .enumerate()
        .filter_map(|(i, j)| j.map(|j| (i as i64, j as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let ((i1, j1), (i2, j2)) = (w[0], w[1]);
            let (num, den) = (j1 - j2, i2 - i1);
            let g = num.gcd(&den);
            let (p, q) = ((num / g) as u32, (den / g) as u32);
            let m = p * i1 as u32 + q * j1 as u32;
            let points = pts
                .iter()
                .filter(|(i, j)| *i >= i1 && *i <= i2 && p as i64 * i + q as i64 * j == m as i64)
                .map(|(i, _)| *i as u32)
                .collect();
            Edge { i1: i1 as u32, p, q, m, points }
        })
        .collect()
}

/// The `q`-th root of `t` closest to the principal complex root.
fn principal_root(t: &Scalar, q: u32, ctx: &Ctx, opt: &SolveOptions) -> AlgRoot {
    if q == 1 {
        return AlgRoot { value: t.clone(), multiplicity: 1, ctx: ctx.clone(), lift: Lift::Identity };
    }
    let mut c = vec![-t.clone()];
    c.resize(q as usize, Scalar::zero());
    c.push(Scalar::one());
    let target = t.to_ball(128).principal_root(q).to_f64();
    solve(&UniPoly::new(c), ctx, opt)
        .into_iter()
        .min_by(|a, b| {
            let da = dist(a.value.to_c64(), target);
            let db = dist(b.value.to_c64(), target);
            da.partial_cmp(&db).unwrap()
        })
        .expect("binomial has roots")
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Solves a regular residual equation term by term: `Y = Σ e_k W^k`.
fn regular(st: &State, policy: &TruncationPolicy) -> (Vec<(Rat, Scalar)>, Option<Rat>) {
    let h = &st.h;
    let dy = h.deg_x() as usize;
    let h1 = h.coeff(1, 0);
    let inv = h1.inv().expect("regular residual has a nonzero linear term");
    let qn = Rat::from_integer(st.q.into());
    let exp_of = |k: usize| &st.e + Rat::from_integer(k.into()) / &qn;
    let one = Rat::one();
    // powers[i][k] = [W^k] S^i
    let mut powers: Vec<Vec<Scalar>> = (0..=dy).map(|i| vec![if i == 0 { Scalar::one() } else { Scalar::zero() }]).collect();
    let get = |p: &Vec<Scalar>, k: usize| p.get(k).cloned().unwrap_or_else(Scalar::zero);
    let mut e: Vec<Scalar> = vec![Scalar::zero()];
    let mut guards = 0usize;
    let mut base_done: Option<usize> = None;
    let mut exact = false;
    let mut k = 0usize;
    loop {
        let next = exp_of(k + 1);
        let satisfied = match &policy.guarantee {
            Guarantee::UntilRegular => next > one && guards >= policy.guard_terms,
            Guarantee::FixedOrder(t) => next >= *t,
        };
        if satisfied {
            break;
        }
        if next > one && base_done.is_none() {
            base_done = Some(k);
        }
        if let Some(b) = base_done {
            let limit = b + 8 * st.q as usize + 32;
            if k >= limit {
                break;
            }
            // Look for an exact finite solution after a run of zeros.
            if k > b && e[k].is_zero_value() && (k - b).is_power_of_two() && residual_is_zero(h, &e) {
                exact = true;
                break;
            }
        }
        k += 1;
        for i in 2..=dy {
            let mut acc = Scalar::zero();
            for l in 1..k {
                let prev = get(&powers[i - 1], k - l);
                if !prev.is_zero_value() && !e[l].is_zero_value() {
                    acc = acc + e[l].clone() * prev;
                }
            }
            powers[i].push(acc);
        }
        let mut res = Scalar::zero();
        for ((i, j), a) in h.terms() {
            let (i, j) = (*i as usize, *j as usize);
            if j > k || (i == 1 && j == 0) {
                continue;
            }
            let pv = get(&powers[i], k - j);
            if !pv.is_zero_value() {
                res = res + a.clone() * pv;
            }
        }
        let ek = -(res * inv.clone());
        let ek = if ek.is_zero_value() { Scalar::zero() } else { ek };
        if !ek.is_zero_value() && exp_of(k) > one {
            guards += 1;
        }
        e.push(ek.clone());
        powers[1].push(ek);
    }
    if !exact && k > 0 && e[k].is_zero_value() && residual_is_zero(h, &e) {
        exact = true;
    }
    let mut terms = st.terms.clone();
    for (kk, c) in e.iter().enumerate().skip(1) {
        if !c.is_zero_value() {
            terms.push((exp_of(kk), c.clone()));
        }
    }
    (terms, if exact { None } else { Some(exp_of(k + 1)) })
}

/// Whether `H(Σ e_k W^k, W)` vanishes identically.
fn residual_is_zero(h: &BiPoly<Scalar>, e: &[Scalar]) -> bool {
    let s = UniPoly::new(e.to_vec());
    subst_uni(h, &s, 1).is_zero()
}

/// `h(s(w), w^n)` for `h` in `(y, z)`.
fn subst_uni(h: &BiPoly<Scalar>, s: &UniPoly<Scalar>, n: usize) -> UniPoly<Scalar> {
    let dy = h.deg_x();
    let mut rows: Vec<UniPoly<Scalar>> = vec![UniPoly::zero(); dy as usize + 1];
    for ((i, j), a) in h.terms() {
        rows[*i as usize] = rows[*i as usize].clone() + UniPoly::monomial(a.clone(), *j as usize * n);
    }
    let mut acc = UniPoly::zero();
    for row in rows.into_iter().rev() {
        acc = acc * s.clone() + row;
    }
    UniPoly::new(acc.into_coeffs().into_iter().map(|c| if c.is_zero_value() { Scalar::zero() } else { c }).collect())
}

/// Valuation in `z` of `g(s(z), z)`; `None` when the residual vanishes.
pub fn residual_valuation(g: &BiPoly<Scalar>, s: &PuiseuxSeries) -> Option<Rat> {
    let n = s.ramification as usize;
    let r = subst_uni(g, &s.in_w(), n);
    r.valuation().map(|v| Rat::new(v.into(), n.into()))
}

/// The `j`-th conjugate (`1 ≤ j ≤ N`), multiplying each coefficient of
/// exponent `Nᵢ/N` by `exp(2πij/N)^{Nᵢ}`.
pub fn conjugate_series(c: &PuiseuxClass, j: usize) -> Result<PuiseuxSeries, Error> {
    conjugate_series_with(c, j, &SolveOptions::default())
}

pub fn conjugate_series_with(c: &PuiseuxClass, j: usize, opt: &SolveOptions) -> Result<PuiseuxSeries, Error> {
    let s = &c.representative;
    let n = s.ramification as usize;
    if j == 0 || j > n {
        return Err(Error::ConjugateOutOfRange { index: j, n });
    }
    if j == n {
        return Ok(s.clone());
    }
    let zeta = adjoin_root_of_unity(n as u32, &s.ctx, opt);
    let nr = Rat::from_integer(n.into());
    let terms = s
        .terms
        .iter()
        .map(|(e, a)| {
            let ni: usize = (e * &nr).to_integer().try_into().expect("exponent fits");
            let w = zeta.value.pow_u(((j * ni) % n) as u32);
            (e.clone(), a.lift(&zeta.lift) * w)
        })
        .collect();
    Ok(PuiseuxSeries { terms, ramification: s.ramification, truncation: s.truncation.clone(), ctx: zeta.ctx })
}

/// Homogenizes `f` of degree `d` and dehomogenizes at `x = 1`:
/// `g(y, z) = F(1 : y : z)`.
pub fn at_infinity(f: &BiPoly<Rat>) -> BiPoly<Scalar> {
    let d = f.total_degree().unwrap_or(0);
    BiPoly::from_terms(f.terms().map(|((i, j), c)| ((*j, d - i - j), Scalar::Rat(c.clone()))))
}
