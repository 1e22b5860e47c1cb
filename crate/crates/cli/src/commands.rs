//! One function per subcommand. Each returns the rendered document and the
//! exit status; `main` decides where the document goes.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use ucoef::bounds::{
    bound_gamma1, bound_gamma2_with, bound_gamma3_with, regime_grid, regime_row, solve_thresholds, LambdaSpacing,
    RegimeRow,
};
use ucoef::schwarz::{coeffs_to_schur, max_modulus, SCREEN_RADIUS, SCREEN_SAMPLES};
use ucoef::uclass::mu_nu;
use ucoef::verify::{brute_force_gamma_max_with, compare_pipelines, verify_sharpness, Executor, DOMINANCE_TOL};
use ucoef::{BoundResult, ClassParams, Complex64, SchurParams, SchwarzCoeffs, SearchConfig};

use crate::format::{complex_pairs, json_document, sig, sig_complex, RunManifest};

/// Stable exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Precondition = 1,
    DominanceViolation = 2,
    Uncovered = 3,
}

pub struct Outcome {
    pub document: String,
    pub status: Status,
}

impl Outcome {
    fn ok(document: String) -> Self {
        Outcome {
            document,
            status: Status::Success,
        }
    }
}

/// Column order of the regime CSV; frozen.
pub const REGIME_COLUMNS: [&str; 9] = [
    "alpha",
    "lambda",
    "lambda_star",
    "g1_bound",
    "g2_bound",
    "g2_regime",
    "g3_bound",
    "g3_regime",
    "g3_covered",
];

/// Executor backed by the current rayon pool. `collect` keeps input order.
pub struct RayonExecutor;

impl Executor for RayonExecutor {
    fn scores(&self, points: &[SchurParams], score: &(dyn Fn(&SchurParams) -> f64 + Sync)) -> Vec<f64> {
        points.par_iter().with_min_len(1024).map(score).collect()
    }
}

#[derive(Serialize)]
struct RootsDoc {
    alpha1: f64,
    alpha_half: f64,
    alpha_nu: f64,
    alpha2: f64,
    alpha2_closed_form: f64,
    residuals: Residuals,
}

#[derive(Serialize)]
struct Residuals {
    alpha1: f64,
    alpha_half: f64,
    alpha_nu: f64,
    alpha2: f64,
}

pub fn roots(json: bool) -> Result<Outcome> {
    let r = solve_thresholds()?;
    let manifest = RunManifest::new("roots", 0);
    let closed = 2.0 - 2.0 / 11.0 * 33f64.sqrt();
    if json {
        let doc = RootsDoc {
            alpha1: r.alpha1,
            alpha_half: r.alpha_half,
            alpha_nu: r.alpha_nu,
            alpha2: r.alpha2,
            alpha2_closed_form: closed,
            residuals: Residuals {
                alpha1: r.residuals[0],
                alpha_half: r.residuals[1],
                alpha_nu: r.residuals[2],
                alpha2: r.residuals[3],
            },
        };
        return Ok(Outcome::ok(json_document(&manifest, &doc)));
    }
    let mut out = manifest.text_header();
    let rows = [
        ("alpha1", r.alpha1, r.residuals[0], "7a^4-20a^3+24a^2-16a+4"),
        ("alpha_half", r.alpha_half, r.residuals[1], "4-12a-19a^2+14a^3-2a^4"),
        ("alpha_nu", r.alpha_nu, r.residuals[2], "3-9a+9a^2-5a^3"),
        ("alpha2", r.alpha2, r.residuals[3], "11a^2-44a+32"),
    ];
    for (name, root, res, poly) in rows {
        writeln!(out, "{name:<11} {}  residual {:.3e}  ({poly})", sig(root), res)?;
    }
    writeln!(out, "alpha2 closed form 2-(2/11)sqrt(33) = {}", sig(closed))?;
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct BoundDoc {
    bound: Option<f64>,
    regime: &'static str,
    covered: bool,
    extremal: Option<&'static str>,
}

impl From<&BoundResult> for BoundDoc {
    fn from(b: &BoundResult) -> Self {
        BoundDoc {
            bound: b.value,
            regime: b.regime.label(),
            covered: b.is_covered(),
            extremal: b.extremal.map(|e| e.describe()),
        }
    }
}

#[derive(Serialize)]
struct BoundsDoc {
    alpha: f64,
    lambda: f64,
    lambda_star: f64,
    mu: f64,
    nu: f64,
    gamma1: BoundDoc,
    gamma2: BoundDoc,
    gamma3: BoundDoc,
}

fn class_params(alpha: f64, lambda: f64) -> Result<ClassParams> {
    ClassParams::new(alpha, lambda).context("invalid class parameters")
}

fn bound_line(name: &str, b: &BoundResult) -> String {
    match (b.value, b.extremal) {
        (Some(v), Some(e)) => format!("{name}: {} [{}]  extremal {}", sig(v), b.regime, e.describe()),
        _ => format!("{name}: NOT-COVERED [{}]", b.regime),
    }
}

pub fn bounds(alpha: f64, lambda: f64, json: bool) -> Result<Outcome> {
    let p = class_params(alpha, lambda)?;
    p.require_within_star()?;
    let roots = solve_thresholds()?;
    let (g1, g2, g3) = (
        bound_gamma1(&p)?,
        bound_gamma2_with(&p, &roots)?,
        bound_gamma3_with(&p, &roots)?,
    );
    let (mu, nu) = mu_nu(&p);
    let manifest = RunManifest::new("bounds", 0)
        .param("alpha", alpha)
        .param("lambda", lambda);
    if json {
        let doc = BoundsDoc {
            alpha,
            lambda,
            lambda_star: p.lambda_star(),
            mu,
            nu,
            gamma1: (&g1).into(),
            gamma2: (&g2).into(),
            gamma3: (&g3).into(),
        };
        return Ok(Outcome::ok(json_document(&manifest, &doc)));
    }
    let mut out = manifest.text_header();
    writeln!(out, "alpha = {}  lambda = {}  lambda_star = {}", sig(alpha), sig(lambda), sig(p.lambda_star()))?;
    writeln!(out, "mu = {}  nu = {}", sig(mu), sig(nu))?;
    for (name, b) in [("gamma1", &g1), ("gamma2", &g2), ("gamma3", &g3)] {
        writeln!(out, "{}", bound_line(name, b))?;
    }
    Ok(Outcome::ok(out))
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_record(row: &RegimeRow) -> [String; 9] {
    [
        row.alpha.to_string(),
        row.lambda.to_string(),
        row.lambda_star.to_string(),
        opt_cell(row.g1.value),
        opt_cell(row.g2.value),
        row.g2.regime.label().to_string(),
        opt_cell(row.g3.value),
        row.g3.regime.label().to_string(),
        row.g3.is_covered().to_string(),
    ]
}

#[derive(Serialize)]
struct RegimeRowDoc {
    alpha: f64,
    lambda: f64,
    lambda_star: f64,
    gamma1: BoundDoc,
    gamma2: BoundDoc,
    gamma3: BoundDoc,
}

#[derive(Serialize)]
struct RegimesDoc {
    rows: Vec<RegimeRowDoc>,
}

/// Regime map as CSV: one `# manifest:` comment line, the frozen header,
/// then rows in `(α outer, λ inner)` order. JSON mode carries the same rows.
pub fn regimes(alpha_steps: usize, lambda_steps: usize, spacing: LambdaSpacing, json: bool) -> Result<Outcome> {
    if alpha_steps < 2 || lambda_steps < 2 {
        bail!("alpha-steps and lambda-steps must be at least 2");
    }
    let roots = solve_thresholds()?;
    let rows: Vec<RegimeRow> = regime_grid(alpha_steps, lambda_steps, spacing)
        .par_iter()
        .map(|&(a, l)| regime_row(a, l, &roots))
        .collect::<Result<_, _>>()?;
    let manifest = RunManifest::new("regimes", 0)
        .param("alpha_steps", alpha_steps)
        .param("lambda_steps", lambda_steps)
        .param(
            "spacing",
            match spacing {
                LambdaSpacing::Geometric => "geometric",
                LambdaSpacing::Linear => "linear",
            },
        );
    if json {
        let doc = RegimesDoc {
            rows: rows
                .iter()
                .map(|r| RegimeRowDoc {
                    alpha: r.alpha,
                    lambda: r.lambda,
                    lambda_star: r.lambda_star,
                    gamma1: (&r.g1).into(),
                    gamma2: (&r.g2).into(),
                    gamma3: (&r.g3).into(),
                })
                .collect(),
        };
        return Ok(Outcome::ok(json_document(&manifest, &doc)));
    }
    let mut writer = csv::Writer::from_writer(manifest.text_header().into_bytes());
    writer.write_record(REGIME_COLUMNS)?;
    for row in &rows {
        writer.write_record(csv_record(row))?;
    }
    let bytes = writer.into_inner().context("flushing CSV buffer")?;
    Ok(Outcome::ok(String::from_utf8(bytes)?))
}

pub struct VerifyArgs {
    pub alpha: f64,
    pub lambda: f64,
    pub k: usize,
    pub config: SearchConfig,
    pub json: bool,
}

#[derive(Serialize)]
struct SharpnessDoc {
    extremal: &'static str,
    closed_form: f64,
    series: f64,
}

#[derive(Serialize)]
struct VerifyDoc {
    alpha: f64,
    lambda: f64,
    k: usize,
    empirical_max: f64,
    bound: BoundDoc,
    gap: Option<f64>,
    dominated: bool,
    attained_at: Vec<[f64; 2]>,
    schur_params: Vec<[f64; 2]>,
    screen_max: f64,
    evaluations: usize,
    sharpness: Option<SharpnessDoc>,
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let p = class_params(args.alpha, args.lambda)?;
    p.require_within_star()?;
    let cfg = &args.config;
    let report = brute_force_gamma_max_with(&p, args.k, cfg, &RayonExecutor)?;
    let sharp = if report.bound.is_covered() {
        Some(verify_sharpness(&p, args.k)?)
    } else {
        None
    };
    let status = if !report.dominated() {
        Status::DominanceViolation
    } else if !report.bound.is_covered() {
        Status::Uncovered
    } else {
        Status::Success
    };
    let manifest = RunManifest::new("verify", cfg.seed)
        .param("alpha", args.alpha)
        .param("lambda", args.lambda)
        .param("k", args.k)
        .param("density", cfg.density)
        .param("refine_rounds", cfg.refine_rounds)
        .param("refine_shrink", cfg.refine_shrink)
        .param("random_samples", cfg.random_samples)
        .param("full_phase", cfg.full_phase);
    let document = if args.json {
        let doc = VerifyDoc {
            alpha: args.alpha,
            lambda: args.lambda,
            k: args.k,
            empirical_max: report.empirical_max,
            bound: (&report.bound).into(),
            gap: report.gap,
            dominated: report.dominated(),
            attained_at: complex_pairs(report.attained_at.as_slice()),
            schur_params: complex_pairs(report.schur.as_slice()),
            screen_max: report.screen_max,
            evaluations: report.evaluations,
            sharpness: sharp.map(|s| SharpnessDoc {
                extremal: s.extremal.describe(),
                closed_form: s.closed_form,
                series: s.series,
            }),
        };
        json_document(&manifest, &doc)
    } else {
        let mut out = manifest.text_header();
        writeln!(out, "|gamma{}| empirical max = {}", args.k, sig(report.empirical_max))?;
        match (report.bound.value, report.gap) {
            (Some(b), Some(g)) => {
                writeln!(out, "theorem bound = {} [{}]", sig(b), report.bound.regime)?;
                writeln!(out, "gap = {:.3e}", g)?;
            }
            _ => writeln!(
                out,
                "theorem bound: NOT-COVERED [{}] (empirical value only, not a theorem value)",
                report.bound.regime
            )?,
        }
        let coeffs: Vec<String> = report.attained_at.as_slice().iter().map(|&z| sig_complex(z)).collect();
        writeln!(out, "attained at c = ({})", coeffs.join(", "))?;
        writeln!(out, "evaluations = {}", report.evaluations)?;
        if let Some(s) = sharp {
            writeln!(
                out,
                "extremal {}: closed form {}, series {}",
                s.extremal.describe(),
                sig(s.closed_form),
                sig(s.series)
            )?;
        }
        if status == Status::DominanceViolation {
            writeln!(out, "DOMINANCE VIOLATED beyond {DOMINANCE_TOL:e}")?;
        }
        out
    };
    Ok(Outcome { document, status })
}

#[derive(Serialize)]
struct ExpandDoc {
    alpha: f64,
    lambda: f64,
    order: usize,
    c: Vec<[f64; 2]>,
    a_closed: Vec<[f64; 2]>,
    a_series: Vec<[f64; 2]>,
    gamma_closed: Vec<[f64; 2]>,
    gamma_series: Vec<[f64; 2]>,
    max_discrepancy: f64,
    polynomial_screen: f64,
}

/// Rejects `c` outside the coefficient body, then tabulates both pipelines.
pub fn expand(alpha: f64, lambda: f64, c: &[Complex64], order: usize, json: bool) -> Result<Outcome> {
    let p = class_params(alpha, lambda)?;
    if c.len() > 3 {
        bail!("at most 3 coefficients are supported, got {}", c.len());
    }
    let raw = SchwarzCoeffs::new_unchecked(c)?;
    coeffs_to_schur(&raw).with_context(|| {
        format!(
            "c is not admissible (polynomial screen max |omega| on |z|={SCREEN_RADIUS} is {})",
            sig(max_modulus(&raw, SCREEN_RADIUS, SCREEN_SAMPLES))
        )
    })?;
    let w = SchwarzCoeffs::new(c)?;
    let screen = max_modulus(&w, SCREEN_RADIUS, SCREEN_SAMPLES);
    let cmp = compare_pipelines(&p, &w, order)?;
    let disc = cmp.max_discrepancy();
    let manifest = RunManifest::new("expand", 0)
        .param("alpha", alpha)
        .param("lambda", lambda)
        .param("order", order)
        .param(
            "c",
            c.iter().map(|&z| z.to_string()).collect::<Vec<_>>().join(","),
        );
    if json {
        let doc = ExpandDoc {
            alpha,
            lambda,
            order,
            c: complex_pairs(c),
            a_closed: complex_pairs(&cmp.a_closed),
            a_series: complex_pairs(&cmp.a_series),
            gamma_closed: complex_pairs(&cmp.gamma_closed),
            gamma_series: complex_pairs(&cmp.gamma_series),
            max_discrepancy: disc,
            polynomial_screen: screen,
        };
        return Ok(Outcome::ok(json_document(&manifest, &doc)));
    }
    let mut out = manifest.text_header();
    writeln!(out, "{:<8} {:>34} {:>34}", "coeff", "closed form", "series pipeline")?;
    let names = ["a2", "a3", "a4"];
    for (i, name) in names.iter().enumerate() {
        writeln!(out, "{name:<8} {:>34} {:>34}", sig_complex(cmp.a_closed[i]), sig_complex(cmp.a_series[i]))?;
    }
    let names = ["gamma1", "gamma2", "gamma3"];
    for (i, name) in names.iter().enumerate() {
        writeln!(
            out,
            "{name:<8} {:>34} {:>34}",
            sig_complex(cmp.gamma_closed[i]),
            sig_complex(cmp.gamma_series[i])
        )?;
    }
    writeln!(out, "max discrepancy = {:.3e}", disc)?;
    writeln!(out, "polynomial screen max |omega| on |z|={SCREEN_RADIUS}: {}", sig(screen))?;
    Ok(Outcome::ok(out))
}
