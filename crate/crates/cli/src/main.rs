use clap::{Args, Parser, Subcommand};
use gasym::algebra::resultant::implicitize_param;
use gasym::algebra::{BiPoly, Rat};
use gasym::classify::{is_regular_perfect, proximity_class};
use gasym::parser::parse_param;
use gasym::plot::{render_svg, PlotOptions, Window};
use gasym::report::{analyze, Analysis, AnalysisOptions, AnalysisReport};
use gasym::{format_poly, parse_poly, Style};
use serde::Serialize;
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_ENGINE: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "gasym", version, about = "Generalized asymptotes of plane algebraic curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute infinity branches, asymptotes and verification checks.
    Analyze(Common),
    /// Draw the curve and its real asymptotes as SVG.
    Plot(Common),
    /// Asymptote families and proximity class of a curve.
    Class(Common),
}

#[derive(Args)]
struct Common {
    /// Polynomial in x and y, e.g. "x*y - 1".
    #[arg(allow_hyphen_values = true)]
    poly: Option<String>,
    /// Parametric input "(px(t), py(t))", implicitized first.
    #[arg(long)]
    param: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write an SVG plot to this path.
    #[arg(long)]
    svg: Option<String>,
    /// Plot window "x0,x1,y0,y1".
    #[arg(long, value_parser = parse_window)]
    window: Option<Window>,
    /// Marching squares grid size.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Sample radii for the decay check, "r1,r2,...".
    #[arg(long, value_parser = parse_radii)]
    radii: Option<Vec<f64>>,
    /// Working precision in bits.
    #[arg(long)]
    precision: Option<u64>,
    /// Largest algebraic extension degree before falling back to numerics.
    #[arg(long)]
    max_ext_degree: Option<usize>,
    /// Negative exponent terms kept past the asymptote part.
    #[arg(long)]
    guard_terms: Option<usize>,
    /// Number of random class members to print (class only).
    #[arg(long, default_value_t = 0)]
    sample: usize,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let [x0, x1, y0, y1] = v[..] else {
        return Err("expected four numbers x0,x1,y0,y1".into());
    };
    let w = Window { x0, x1, y0, y1 };
    w.is_valid().then_some(w).ok_or_else(|| "window must satisfy x0 < x1 and y0 < y1".into())
}

fn parse_radii(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if v.is_empty() || v.iter().any(|r| !(*r > 0.0)) || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err("radii must be positive and strictly increasing".into());
    }
    Ok(v)
}

impl Common {
    fn input(&self) -> Result<BiPoly<Rat>, String> {
        match (&self.poly, &self.param) {
            (Some(_), Some(_)) => Err("give either a polynomial or --param, not both".into()),
            (None, None) => Err("missing polynomial".into()),
            (Some(p), None) => parse_poly(p).map_err(|e| e.to_string()),
            (None, Some(p)) => {
                let (px, py) = parse_param(p).map_err(|e| e.to_string())?;
                implicitize_param(&px, &py).map_err(|e| e.to_string())
            }
        }
    }

    fn options(&self) -> AnalysisOptions {
        let mut o = AnalysisOptions::default();
        if let Some(r) = &self.radii {
            o.plan.radii = r.clone();
        }
        if let Some(p) = self.precision {
            o.plan.precision = p;
            o.policy.solve.prec = p;
        }
        if let Some(d) = self.max_ext_degree {
            o.policy.solve.max_ext_degree = d;
        }
        if let Some(k) = self.guard_terms {
            o.policy.guard_terms = k;
        }
        o
    }

    fn plot_options(&self) -> PlotOptions {
        PlotOptions { window: self.window.unwrap_or_default(), grid: self.grid, ..Default::default() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (Cmd::Analyze(a) | Cmd::Plot(a) | Cmd::Class(a)) = &cli.cmd;
    let f = match a.input() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let mut opts = a.options();
    if !matches!(cli.cmd, Cmd::Analyze(_)) {
        opts.numeric_checks = false;
    }
    let analysis = match analyze(&f, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("engine error: {e}");
            eprintln!("{}", serde_json::json!({ "input": format_poly(&f, Style::Plain), "error": e.to_string() }));
            return ExitCode::from(EXIT_ENGINE);
        }
    };
    if let Some(path) = &a.svg {
        if let Err(code) = write_plot(&f, &analysis, a, path) {
            return code;
        }
    }
    match &cli.cmd {
        Cmd::Analyze(_) => {
            let r = &analysis.report;
            if a.json {
                println!("{}", serde_json::to_string_pretty(r).expect("report serializes"));
            } else {
                print_text(r);
            }
            if r.verification.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Cmd::Plot(_) => {
            if a.svg.is_none() {
                let out = render_svg(&f, &analysis.asymptotes, &a.plot_options());
                if out.empty_trace {
                    eprintln!("warning: no real points of the curve in the window");
                }
                print!("{}", out.svg);
            }
            ExitCode::SUCCESS
        }
        Cmd::Class(_) => {
            let r = class_report(&f, &analysis, a.sample);
            if a.json {
                println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            } else {
                print_class(&r);
            }
            ExitCode::SUCCESS
        }
    }
}

fn write_plot(f: &BiPoly<Rat>, analysis: &Analysis, a: &Common, path: &str) -> Result<(), ExitCode> {
    let out = render_svg(f, &analysis.asymptotes, &a.plot_options());
    if out.empty_trace {
        eprintln!("warning: no real points of the curve in the window");
    }
    std::fs::write(path, out.svg).map_err(|e| {
        eprintln!("cannot write {path}: {e}");
        ExitCode::from(EXIT_ENGINE)
    })
}

#[derive(Serialize)]
struct BranchFamily {
    m: String,
    ramification: u32,
    asymptote: String,
    family: Option<String>,
    dimension: Option<usize>,
    unavailable: Option<String>,
    samples: Vec<String>,
}

#[derive(Serialize)]
struct ClassReport {
    input: String,
    regular_perfect: bool,
    class: Option<String>,
    dimension: Option<usize>,
    free_monomials: Vec<String>,
    samples: Vec<String>,
    branches: Vec<BranchFamily>,
}

const SAMPLE_SEED: u64 = 0x5eed;

fn class_report(f: &BiPoly<Rat>, an: &Analysis, k: usize) -> ClassReport {
    let mut branches = Vec::new();
    for ((b, a), fam) in an.branches.iter().zip(&an.asymptotes).zip(&an.families) {
        let (family, dimension, unavailable, samples) = match fam {
            Ok(d) => (
                Some(d.family_string()),
                Some(d.dimension),
                None,
                d.sample_members(k, SAMPLE_SEED).iter().map(|p| format_poly(p, Style::Plain)).collect(),
            ),
            Err(e) => (None, None, Some(e.to_string()), Vec::new()),
        };
        branches.push(BranchFamily {
            m: b.point.m().to_string(),
            ramification: b.ramification,
            asymptote: format_poly(&a.implicit_original, Style::Plain),
            family,
            dimension,
            unavailable,
            samples,
        });
    }
    let own = f.primitive();
    let regular = is_regular_perfect(&own);
    let desc = regular.then(|| proximity_class(&own).ok()).flatten();
    ClassReport {
        input: format_poly(f, Style::Plain),
        regular_perfect: regular,
        class: desc.as_ref().map(|d| d.family_string()),
        dimension: desc.as_ref().map(|d| d.dimension),
        free_monomials: an.report.proximity_class.as_ref().map(|p| p.free_monomials.clone()).unwrap_or_default(),
        samples: desc
            .map(|d| d.sample_members(k, SAMPLE_SEED).iter().map(|p| format_poly(p, Style::Plain)).collect())
            .unwrap_or_default(),
        branches,
    }
}

fn print_text(r: &AnalysisReport) {
    println!("curve: {} (degree {})", r.input, r.degree);
    if r.preparation.lambda != 0 {
        println!("shear: lambda = {}, prepared {}", r.preparation.lambda, r.preparation.prepared);
    }
    if r.preparation.reducible {
        println!("factors: {}", r.preparation.factors.join(" ; "));
    }
    println!("mode: {}", r.mode);
    for p in &r.infinity_points {
        if p.vertical {
            println!("infinity point (0:1:0), m = {} after the shear (multiplicity {})", p.m, p.multiplicity);
        } else {
            match &p.field {
            Some(k) => println!(
                "infinity point m = {} (multiplicity {}), θ = {} with {} = 0",
                p.m, p.multiplicity, k.root, k.minpoly
            ),
                None => println!("infinity point m = {} (multiplicity {})", p.m, p.multiplicity),
            }
        }
        for b in &p.branches {
            println!("  branch N = {}, n = {}, b = {} ({} frame)", b.ramification, b.degree, b.b, b.frame);
            println!("    r(z) = {}", b.series);
            println!("    asymptote: {}  param ({}, {})", b.asymptote.implicit, b.asymptote.param[0], b.asymptote.param[1]);
            if let Some(d) = &b.family.descriptor {
                println!("    family: {}", d.family);
            }
            let failed = b.checks.failures();
            if !failed.is_empty() {
                println!("    failed checks: {}", failed.join(", "));
            }
        }
    }
    println!(
        "perfect: {} ({:?}), regular perfect: {}",
        r.perfection.perfect, r.perfection.reason, r.regular_perfect
    );
    if let Some(c) = &r.proximity_class {
        println!("proximity class: {} (dimension {})", c.family, c.dimension);
    }
    println!("verification: {}", if r.verification.pass { "pass" } else { "FAIL" });
    for f in &r.verification.failed {
        println!("  {f}");
    }
}

fn print_class(r: &ClassReport) {
    println!("curve: {}", r.input);
    match &r.class {
        Some(c) => println!("proximity class: {} (dimension {})", c, r.dimension.unwrap_or(0)),
        None => println!("not regular perfect"),
    }
    for s in &r.samples {
        println!("  member: {s}");
    }
    for b in &r.branches {
        println!("branch at m = {} (N = {}): asymptote {}", b.m, b.ramification, b.asymptote);
        match (&b.family, &b.unavailable) {
            (Some(f), _) => println!("  family: {} (dimension {})", f, b.dimension.unwrap_or(0)),
            (None, Some(e)) => println!("  family unavailable: {e}"),
            _ => {}
        }
        for s in &b.samples {
            println!("  member: {s}");
        }
    }
}
