//! The full pipeline and its serializable report.

use crate::algebra::field::render_residue;
use crate::algebra::ring::rat_to_string;
use crate::algebra::{BiPoly, Ctx, Rat, Scalar, UniPoly};
use crate::asymptote::{build_asymptote, graph_asymptotes, leaf_independence_check, param_satisfies, Asymptote};
use crate::branch::{
    all_branches, prepare_curve, transposed_curve, unshear, vertical_branches, vertical_slope, InfinityBranch, PreparedCurve,
};
use crate::classify::{
    asymptote_family, is_perfect, is_regular_perfect, proximity_class, PerfectionVerdict,
    ProximityClassDescriptor,
};
use crate::parser::{format_poly, format_uni, Style};
use crate::puiseux::{residual_valuation, TruncationPolicy};
use crate::verify::{
    approach_decay_check, approach_decay_check_transposed, distance_to_asymptote, divisibility_check, sample_branch, DecayReport, DecayRule, SamplePlan};
use crate::Error;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub policy: TruncationPolicy,
    pub plan: SamplePlan,
    pub rule: DecayRule,
    /// Run the numeric decay check.
    pub numeric_checks: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            policy: TruncationPolicy::default(),
            plan: SamplePlan::default(),
            rule: DecayRule::Slope,
            numeric_checks: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: String,
    pub degree: u32,
    pub preparation: Preparation,
    pub mode: String,
    pub infinity_points: Vec<PointReport>,
    pub perfection: PerfectionVerdict,
    pub regular_perfect: bool,
    pub proximity_class: Option<FamilyReport>,
    pub verification: Verification,
}

#[derive(Clone, Debug, Serialize)]
pub struct Preparation {
    pub lambda: u32,
    pub prepared: String,
    pub reducible: bool,
    pub factors: Vec<String>,
    pub factors_complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub minpoly: String,
    pub root: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub m: String,
    /// The point is `(0:1:0)` in the input frame.
    pub vertical: bool,
    pub multiplicity: u32,
    pub field: Option<FieldInfo>,
    pub branches: Vec<BranchReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub exponent: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    /// Coordinates the expansion was done in: input, sheared or transposed.
    pub frame: String,
    pub ramification: u32,
    pub degree: u32,
    pub b: u32,
    pub k: usize,
    pub reduced_exponents: Vec<u32>,
    pub field: Option<FieldInfo>,
    pub series: String,
    pub terms: Vec<Term>,
    pub truncation_order: Option<String>,
    pub asymptote: AsymptoteReport,
    pub family: FamilyOutcome,
    pub checks: BranchChecks,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoteReport {
    pub degree: u32,
    /// `truncation` of the branch series, or `graph` `y = P(x)` for a
    /// branch at the vertical point.
    pub form: String,
    pub param: [String; 2],
    pub implicit: String,
    pub latex: String,
    pub prepared_param: Option<[String; 2]>,
    pub prepared_implicit: Option<String>,
    pub properness_gcd: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub dimension: usize,
    pub parameters: Vec<String>,
    pub free_monomials: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyOutcome {
    pub available: bool,
    pub descriptor: Option<FamilyReport>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchChecks {
    pub divisibility: bool,
    pub leaf_independence: bool,
    pub residual_valuation: Option<String>,
    pub residual_ok: bool,
    pub param_identity: bool,
    pub leading_form: bool,
    pub degree_bound: bool,
    pub decay: Option<DecayReport>,
}

impl BranchChecks {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.divisibility, "divisibility"),
            (self.leaf_independence, "leaf-independence"),
            (self.residual_ok, "residual-valuation"),
            (self.param_identity, "param-identity"),
            (self.leading_form, "leading-form"),
            (self.degree_bound, "degree-bound"),
            (self.decay.as_ref().map_or(true, |d| d.pass), "approach-decay"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub pass: bool,
    pub failed: Vec<String>,
}

/// Everything computed for one curve, kept for callers that need more than
/// the report.
pub struct Analysis {
    pub curve: PreparedCurve,
    /// Present when the input has the vertical infinity point `(0:1:0)`.
    pub transposed: Option<PreparedCurve>,
    /// Frame each branch was expanded in, parallel to `branches`.
    pub frames: Vec<Frame>,
    pub branches: Vec<InfinityBranch>,
    /// Asymptotes in the input frame, parallel to `branches`.
    pub asymptotes: Vec<Asymptote>,
    pub families: Vec<Result<ProximityClassDescriptor, Error>>,
    pub report: AnalysisReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Prepared,
    Transposed,
}

impl Analysis {
    pub fn curve_for(&self, i: usize) -> &PreparedCurve {
        match self.frames[i] {
            Frame::Prepared => &self.curve,
            Frame::Transposed => self.transposed.as_ref().expect("transposed frame"),
        }
    }
}

pub fn exponent_text(q: &Rat) -> String {
    rat_to_string(q)
}

fn field_info(ctx: &Ctx) -> Option<FieldInfo> {
    match ctx {
        Ctx::Field(k) => {
            let (re, im) = k.theta(128).to_f64();
            Some(FieldInfo {
                minpoly: render_residue(k.minpoly(), "θ"),
                root: format!("{re:.15} + {im:.15}*I"),
            })
        }
        _ => None,
    }
}

/// `coeff*z^(p/q)` terms in descending exponent order.
pub fn series_text(terms: &[(Rat, Scalar)]) -> String {
    let mut s = String::new();
    for (q, c) in terms {
        let (neg, abs, unit) = crate::parser::FormatCoeff::split(c, Style::Plain);
        let mono = if q.is_zero() {
            None
        } else if q.is_one() {
            Some("z".to_string())
        } else if q.is_integer() && q.is_positive() {
            Some(format!("z^{q}"))
        } else {
            Some(format!("z^({})", rat_to_string(q)))
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        match mono {
            None => s.push_str(&abs),
            Some(m) if unit => s.push_str(&m),
            Some(m) => {
                s.push_str(&abs);
                s.push('*');
                s.push_str(&m);
            }
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn family_report(d: &ProximityClassDescriptor) -> FamilyReport {
    let names = d.parameters();
    FamilyReport {
        family: d.family_string(),
        dimension: d.dimension,
        parameters: names,
        free_monomials: d
            .irrelevant_monomials
            .iter()
            .map(|(i, j)| format_poly(&BiPoly::monomial(Rat::one(), *i, *j), Style::Plain))
            .collect(),
    }
}

fn param_text(p: &(UniPoly<Scalar>, UniPoly<Scalar>)) -> [String; 2] {
    [format_uni(&p.0, "t"), format_uni(&p.1, "t")]
}

fn leading_form_ok(a: &Asymptote) -> bool {
    let lin = BiPoly::y() - BiPoly::x().scale(&a.m);
    let target = lin.pow(a.n);
    let diff = a.implicit.homogeneous(a.n) - target;
    let ok = diff.terms().all(|(_, c)| c.is_zero_value());
    ok && a.implicit.total_degree() == Some(a.n)
}

/// The graph asymptote closest to a branch of the transposed curve, if the
/// branch has `x` unbounded.
fn matching_graph(b: &InfinityBranch, graphs: &[Asymptote]) -> Option<Asymptote> {
    if b.r_terms.first().map_or(true, |(q, _)| !q.is_positive()) {
        return None;
    }
    let probe = SamplePlan { radii: vec![1e6], rays: vec![0.3], precision: 256 };
    let p = sample_branch(b, &probe).pop()?;
    graphs
        .iter()
        .map(|g| (distance_to_asymptote(&p.y, &p.z, g).0, g))
        .filter(|(d, _)| d.is_finite() && *d < 1e-2)
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .map(|(_, g)| g.clone())
}

/// Runs preparation, expansion, asymptote construction, classification and
/// verification.
pub fn analyze(f: &BiPoly<Rat>, opts: &AnalysisOptions) -> Result<Analysis, Error> {
    let c = prepare_curve(f)?;
    let groups = all_branches(&c, &opts.policy)?;
    let t = transposed_curve(&c);
    // graph forms y = P(x) for branches at the vertical point where x grows
    let graphs = match &t {
        Some(_) => graph_asymptotes(&unshear(&c.f, c.lambda), &opts.policy).unwrap_or_default(),
        None => Vec::new(),
    };
    let vertical = vertical_slope(&c).map(Scalar::Rat);
    let mut points = Vec::new();
    let mut all = Vec::new();
    let mut asymptotes = Vec::new();
    let mut failed = Vec::new();
    let mut numeric = false;
    let mut frames = Vec::new();
    let mut families = Vec::new();
    for (p, branches) in groups {
        let is_vertical = vertical.as_ref().is_some_and(|v| p.m().equals(v) == Some(true));
        let (frame, branches) = match (&t, is_vertical) {
            (Some(t), true) => (t, vertical_branches(t, &opts.policy)?),
            _ => (&c, branches),
        };
        let g = frame.g();
        let mut reports = Vec::new();
        for b in branches {
            numeric |= b.series.is_numeric();
            let mut a = build_asymptote(frame, &b)?;
            let graph = if is_vertical { matching_graph(&b, &graphs) } else { None };
            let v = residual_valuation(&g, &b.series);
            let residual_ok = match (&v, &b.series.truncation) {
                (None, _) => true,
                (Some(_), None) => false,
                (Some(v), Some(t)) => v >= t,
            };
            let mut decay = None;
            let mut use_graph = false;
            if let Some(ga) = &graph {
                if opts.numeric_checks {
                    let r = approach_decay_check_transposed(frame, &b, ga, &opts.plan, opts.rule);
                    use_graph = r.pass;
                    if use_graph {
                        decay = Some(r);
                    }
                } else {
                    use_graph = true;
                }
            }
            if opts.numeric_checks && decay.is_none() {
                decay = Some(approach_decay_check(frame, &b, &a, &opts.plan, opts.rule));
            }
            let checks = BranchChecks {
                divisibility: divisibility_check(frame, &b),
                leaf_independence: leaf_independence_check(&b, &opts.policy.solve)?,
                residual_valuation: Some(v.as_ref().map_or("inf".to_string(), exponent_text)),
                residual_ok,
                param_identity: param_satisfies(&a.implicit, &a.param)
                    && param_satisfies(&a.implicit_original, &a.param_original)
                    && graph.as_ref().map_or(true, |g| param_satisfies(&g.implicit, &g.param)),
                leading_form: leading_form_ok(&a),
                degree_bound: a.n <= c.d,
                decay,
            };
            for name in checks.failures() {
                failed.push(format!("m={} N={}: {}", p.m(), b.ramification, name));
            }
            if is_vertical {
                a = match (use_graph, graph) {
                    (true, Some(g)) => g,
                    _ => a.transpose(),
                };
            }
            let fam = asymptote_family(frame, &b, &a);
            let family = match &fam {
                Ok(d) => FamilyOutcome { available: true, descriptor: Some(family_report(d)), reason: None },
                Err(e) => FamilyOutcome { available: false, descriptor: None, reason: Some(e.to_string()) },
            };
            families.push(fam);
            frames.push(if is_vertical { Frame::Transposed } else { Frame::Prepared });
            let shown = b.k + opts.policy.guard_terms;
            let terms: Vec<Term> = b
                .r_terms
                .iter()
                .map(|(q, c)| Term { exponent: exponent_text(q), coefficient: c.to_string() })
                .collect();
            let sheared = c.lambda != 0;
            let frame_name = match (is_vertical, sheared) {
                (true, _) => "transposed",
                (false, true) => "sheared",
                (false, false) => "input",
            };
            reports.push(BranchReport {
                frame: frame_name.into(),
                ramification: b.ramification,
                degree: b.n,
                b: b.b,
                k: b.k,
                reduced_exponents: b.reduced.clone(),
                field: field_info(&b.series.ctx),
                series: series_text(&b.r_terms[..shown.min(b.r_terms.len())]),
                terms,
                truncation_order: b.series.truncation.as_ref().map(|t| exponent_text(&(Rat::one() - t))),
                asymptote: AsymptoteReport {
                    degree: a.implicit_original.total_degree().unwrap_or(0),
                    form: if use_graph { "graph".into() } else { "truncation".into() },
                    param: param_text(&a.param_original),
                    implicit: format_poly(&a.implicit_original, Style::Plain),
                    latex: format_poly(&a.implicit_original, Style::Latex),
                    prepared_param: sheared.then(|| param_text(&a.param)),
                    prepared_implicit: sheared.then(|| format_poly(&a.implicit, Style::Plain)),
                    properness_gcd: a.properness_gcd,
                },
                family,
                checks,
            });
            all.push(b);
            asymptotes.push(a);
        }
        points.push(PointReport {
            m: p.m().to_string(),
            vertical: is_vertical,
            multiplicity: p.multiplicity,
            field: field_info(&p.root.ctx),
            branches: reports,
        });
    }
    let refs: Vec<&InfinityBranch> = all.iter().collect();
    let perfection = is_perfect(&c, &refs)?;
    let original = c.original.clone();
    let regular = is_regular_perfect(&original.primitive());
    let prox = if regular { proximity_class(&original.primitive()).ok().map(|d| family_report(&d)) } else { None };
    let report = AnalysisReport {
        input: format_poly(&c.original, Style::Plain),
        degree: c.d,
        preparation: Preparation {
            lambda: c.lambda,
            prepared: format_poly(&c.f, Style::Plain),
            reducible: c.is_reducible(),
            factors: c.factors.iter().map(|p| format_poly(p, Style::Plain)).collect(),
            factors_complete: c.factors_complete,
        },
        mode: if numeric { "numeric-downgraded".into() } else { "exact".into() },
        infinity_points: points,
        perfection,
        regular_perfect: regular,
        proximity_class: prox,
        verification: Verification { pass: failed.is_empty(), failed },
    };
    Ok(Analysis { curve: c, transposed: t, frames, branches: all, asymptotes, families, report })
}
