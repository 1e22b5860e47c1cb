//! Piecewise sharp bounds for `|γ₁|, |γ₂|, |γ₃|` on `U(α, λ)`.
//!
//! The regime of each bound is fixed by where `λ` sits relative to the
//! threshold curves `λ₁`, `λ_{1/2}`, `λ_ν` and `λ⋆`, and where `α` sits
//! relative to the roots `α_{1/2} < α₁ < α_ν < α₂` of four fixed polynomials.
//! The `γ₃` bound is built on the Prokhorov–Szynal estimate of
//! `|c₃ + μc₁c₂ + νc₁³|`, whose restated regions are classified by [`PsPoint`].

use alloc::vec::Vec;
use core::fmt;

use libm::{pow, sqrt};

use crate::error::{Error, Result};
use crate::uclass::{check_open_unit, lambda_star_unchecked, ClassParams};

/// Polynomials in ascending coefficient order whose roots in `(0, 1)` are the
/// regime thresholds.
pub const POLY_ALPHA1: [f64; 5] = [4.0, -16.0, 24.0, -20.0, 7.0];
pub const POLY_ALPHA_HALF: [f64; 5] = [4.0, -12.0, -19.0, 14.0, -2.0];
pub const POLY_ALPHA_NU: [f64; 4] = [3.0, -9.0, 9.0, -5.0];
pub const POLY_ALPHA2: [f64; 3] = [32.0, -44.0, 11.0];

/// Cells in the sign scan that brackets each root.
pub const SCAN_CELLS: usize = 100;
/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-14;

pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `λ₁(α) = 2(1−α)²/(α(2−α))`.
pub fn lambda1(alpha: f64) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    Ok(lambda1_unchecked(alpha))
}

/// `λ_{1/2}(α) = (1−α)(2−α)/(2α(3−α))`; unbounded as `α → 0⁺`.
pub fn lambda_half(alpha: f64) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    Ok(lambda_half_unchecked(alpha))
}

/// `λ_ν(α) = √(3(1−α)³/(α²(3−α)))`, the `λ` at which `ν = 1`.
pub fn lambda_nu(alpha: f64) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    Ok(lambda_nu_unchecked(alpha))
}

fn lambda1_unchecked(a: f64) -> f64 {
    2.0 * (1.0 - a) * (1.0 - a) / (a * (2.0 - a))
}

fn lambda_half_unchecked(a: f64) -> f64 {
    (1.0 - a) * (2.0 - a) / (2.0 * a * (3.0 - a))
}

fn lambda_nu_unchecked(a: f64) -> f64 {
    sqrt(3.0 * pow(1.0 - a, 3.0) / (a * a * (3.0 - a)))
}

/// The four regime roots with their polynomial residuals
/// (ordered `alpha1, alpha_half, alpha_nu, alpha2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdReport {
    pub alpha1: f64,
    pub alpha_half: f64,
    pub alpha_nu: f64,
    pub alpha2: f64,
    pub residuals: [f64; 4],
}

/// Finds the unique root of `coeffs` in `(0, 1)`.
///
/// `(0, 1)` is scanned in [`SCAN_CELLS`] cells; exactly one cell must show a
/// sign change (an endpoint zero counts as one). That cell is then bisected
/// to [`ROOT_TOL`]. Returns `(root, |p(root)|)`.
pub fn unique_root_in_unit(coeffs: &[f64], name: &'static str) -> Result<(f64, f64)> {
    let cells: Vec<(f64, f64)> = (0..SCAN_CELLS)
        .map(|i| {
            (
                i as f64 / SCAN_CELLS as f64,
                (i + 1) as f64 / SCAN_CELLS as f64,
            )
        })
        .filter(|&(lo, hi)| {
            let (flo, fhi) = (eval_poly(coeffs, lo), eval_poly(coeffs, hi));
            flo.signum() != fhi.signum() || fhi == 0.0
        })
        .collect();
    if cells.len() != 1 {
        return Err(Error::Bracket {
            polynomial: name,
            sign_changes: cells.len(),
        });
    }
    let (mut lo, mut hi) = cells[0];
    let mut flo = eval_poly(coeffs, lo);
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = eval_poly(coeffs, mid);
        if fmid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let root = if eval_poly(coeffs, lo).abs() <= eval_poly(coeffs, hi).abs() {
        lo
    } else {
        hi
    };
    Ok((root, eval_poly(coeffs, root).abs()))
}

pub fn solve_thresholds() -> Result<ThresholdReport> {
    let (alpha1, r1) = unique_root_in_unit(&POLY_ALPHA1, "7a^4-20a^3+24a^2-16a+4")?;
    let (alpha_half, r2) = unique_root_in_unit(&POLY_ALPHA_HALF, "4-12a-19a^2+14a^3-2a^4")?;
    let (alpha_nu, r3) = unique_root_in_unit(&POLY_ALPHA_NU, "3-9a+9a^2-5a^3")?;
    let (alpha2, r4) = unique_root_in_unit(&POLY_ALPHA2, "11a^2-44a+32")?;
    Ok(ThresholdReport {
        alpha1,
        alpha_half,
        alpha_nu,
        alpha2,
        residuals: [r1, r2, r3, r4],
    })
}

/// Regions of the Prokhorov–Szynal estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    D1,
    D2,
    D3,
    /// The isolated point `(2, 1)`.
    Boundary21,
    Uncovered,
}

/// A `(μ, ν)` pair with its region label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsPoint {
    pub mu: f64,
    pub nu: f64,
    pub region: Region,
}

/// `(4/27)(1+μ)³ − (1+μ)`, the lower edge of `D₂`.
pub fn d2_lower_edge(mu: f64) -> f64 {
    let s = 1.0 + mu;
    4.0 / 27.0 * s * s * s - s
}

impl PsPoint {
    /// Classifies with priority `(2,1)`, then `D₁ > D₂ > D₃`; `Φ` agrees on
    /// every overlap.
    pub fn new(mu: f64, nu: f64) -> Self {
        let (am, an) = (mu.abs(), nu.abs());
        let region = if am == 2.0 && nu == 1.0 {
            Region::Boundary21
        } else if am <= 0.5 && an <= 1.0 {
            Region::D1
        } else if (0.5..=2.0).contains(&am) && d2_lower_edge(am) <= nu && nu <= 1.0 {
            Region::D2
        } else if am <= 2.0 && an >= 1.0 {
            Region::D3
        } else {
            Region::Uncovered
        };
        PsPoint { mu, nu, region }
    }
}

/// Sharp upper bound `Φ(μ, ν)` of `|c₃ + μc₁c₂ + νc₁³|` over all Schwarz functions.
pub fn ps_phi(point: &PsPoint) -> Result<f64> {
    match point.region {
        Region::D1 | Region::D2 | Region::Boundary21 => Ok(1.0),
        Region::D3 => Ok(point.nu.abs()),
        Region::Uncovered => Err(Error::UncoveredPoint {
            mu: point.mu,
            nu: point.nu,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    G1,
    G2Small,
    G2Large,
    G3Small,
    G3Large,
    /// `λ ≤ λ⋆` but no branch of the `γ₃` theorem applies.
    G3Uncovered,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::G1 => "G1",
            Regime::G2Small => "G2-small",
            Regime::G2Large => "G2-large",
            Regime::G3Small => "G3-small",
            Regime::G3Large => "G3-large",
            Regime::G3Uncovered => "G3-uncovered",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which pure extremal `c_k = 1` attains a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    C1,
    C2,
    C3,
}

impl Extremal {
    pub fn index(self) -> usize {
        match self {
            Extremal::C1 => 1,
            Extremal::C2 => 2,
            Extremal::C3 => 3,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Extremal::C1 => "c1=1 (function f1)",
            Extremal::C2 => "c2=1",
            Extremal::C3 => "c3=1",
        }
    }
}

/// A bound for `|γ_k|`. `value` and `extremal` are `None` exactly when the
/// regime is not covered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundResult {
    pub value: Option<f64>,
    pub regime: Regime,
    pub extremal: Option<Extremal>,
}

impl BoundResult {
    fn covered(value: f64, regime: Regime, extremal: Extremal) -> Self {
        BoundResult {
            value: Some(value),
            regime,
            extremal: Some(extremal),
        }
    }

    pub fn is_covered(&self) -> bool {
        self.value.is_some()
    }
}

/// `|γ₁| ≤ λ/(2(1−α))`.
pub fn bound_gamma1(p: &ClassParams) -> Result<BoundResult> {
    p.require_within_star()?;
    Ok(BoundResult::covered(
        p.lambda() / (2.0 * (1.0 - p.alpha())),
        Regime::G1,
        Extremal::C1,
    ))
}

pub fn g2_small(p: &ClassParams) -> f64 {
    p.lambda() / (2.0 * (2.0 - p.alpha()))
}

pub fn g2_large(p: &ClassParams) -> f64 {
    let (a, l) = (p.alpha(), p.lambda());
    a * l * l / (4.0 * (1.0 - a) * (1.0 - a))
}

pub fn g3_small(p: &ClassParams) -> f64 {
    p.lambda() / (2.0 * (3.0 - p.alpha()))
}

pub fn g3_large(p: &ClassParams) -> f64 {
    let (a, l) = (p.alpha(), p.lambda());
    a * a * l * l * l / (6.0 * pow(1.0 - a, 3.0))
}

/// `|γ₂|` bound; `λ = λ₁` goes to the small branch.
pub fn bound_gamma2(p: &ClassParams) -> Result<BoundResult> {
    let roots = solve_thresholds()?;
    bound_gamma2_with(p, &roots)
}

pub fn bound_gamma2_with(p: &ClassParams, roots: &ThresholdReport) -> Result<BoundResult> {
    p.require_within_star()?;
    let (a, l) = (p.alpha(), p.lambda());
    let small = a <= roots.alpha1 || l <= lambda1_unchecked(a);
    Ok(if small {
        BoundResult::covered(g2_small(p), Regime::G2Small, Extremal::C2)
    } else {
        BoundResult::covered(g2_large(p), Regime::G2Large, Extremal::C1)
    })
}

/// `|γ₃|` bound. Returns an uncovered result (no value) in the parts of
/// `λ ≤ λ⋆` that no branch reaches, e.g. `α ∈ (α_{1/2}, α_ν)` with
/// `λ ∈ (λ_{1/2}, λ⋆]`.
pub fn bound_gamma3(p: &ClassParams) -> Result<BoundResult> {
    let roots = solve_thresholds()?;
    bound_gamma3_with(p, &roots)
}

pub fn bound_gamma3_with(p: &ClassParams, roots: &ThresholdReport) -> Result<BoundResult> {
    p.require_within_star()?;
    let (a, l) = (p.alpha(), p.lambda());
    let small_cap = if a <= roots.alpha_half {
        lambda_star_unchecked(a)
    } else if a <= roots.alpha2 {
        lambda_half_unchecked(a)
    } else {
        lambda_nu_unchecked(a)
    };
    // (μ, ν) in D₂ with ν ≤ 1
    let d2_case = (roots.alpha_nu..=roots.alpha2).contains(&a)
        && lambda_half_unchecked(a) <= l
        && l <= lambda_nu_unchecked(a);
    let large = a >= roots.alpha_nu && lambda_nu_unchecked(a) <= l;
    Ok(if l <= small_cap || d2_case {
        BoundResult::covered(g3_small(p), Regime::G3Small, Extremal::C3)
    } else if large {
        BoundResult::covered(g3_large(p), Regime::G3Large, Extremal::C1)
    } else {
        BoundResult {
            value: None,
            regime: Regime::G3Uncovered,
            extremal: None,
        }
    })
}

pub fn bound_gamma(p: &ClassParams, k: usize) -> Result<BoundResult> {
    match k {
        1 => bound_gamma1(p),
        2 => bound_gamma2(p),
        3 => bound_gamma3(p),
        _ => Err(Error::InvalidIndex(k)),
    }
}

/// How `λ` is spaced within `(0, λ⋆(α)]` in [`regime_map`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LambdaSpacing {
    /// `λ⋆ · 10^{−3(n−1−j)/(n−1)}`: three decades ending at `λ⋆`.
    #[default]
    Geometric,
    /// `λ⋆ · (j+1)/n`.
    Linear,
}

/// Decades spanned by geometric `λ` spacing.
pub const GEOMETRIC_DECADES: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeRow {
    pub alpha: f64,
    pub lambda: f64,
    pub lambda_star: f64,
    pub g1: BoundResult,
    pub g2: BoundResult,
    pub g3: BoundResult,
}

/// `α_i = (i+1)/(n+1)` for `i < alpha_steps`.
pub fn alpha_grid(alpha_steps: usize) -> impl Iterator<Item = f64> {
    (0..alpha_steps).map(move |i| (i + 1) as f64 / (alpha_steps + 1) as f64)
}

pub fn lambda_grid(lambda_star: f64, lambda_steps: usize, spacing: LambdaSpacing) -> impl Iterator<Item = f64> {
    (0..lambda_steps).map(move |j| match spacing {
        LambdaSpacing::Linear => (lambda_star * (j + 1) as f64 / lambda_steps as f64).min(lambda_star),
        LambdaSpacing::Geometric => {
            if j + 1 == lambda_steps {
                lambda_star
            } else {
                let frac = (lambda_steps - 1 - j) as f64 / (lambda_steps.max(2) - 1) as f64;
                lambda_star * pow(10.0, -GEOMETRIC_DECADES * frac)
            }
        }
    })
}

/// One row for a single `(α, λ)` with `λ ≤ λ⋆(α)`.
pub fn regime_row(alpha: f64, lambda: f64, roots: &ThresholdReport) -> Result<RegimeRow> {
    let p = ClassParams::new(alpha, lambda)?;
    Ok(RegimeRow {
        alpha,
        lambda,
        lambda_star: p.lambda_star(),
        g1: bound_gamma1(&p)?,
        g2: bound_gamma2_with(&p, roots)?,
        g3: bound_gamma3_with(&p, roots)?,
    })
}

/// Grid points of the regime map in row-major `(α outer, λ inner)` order.
pub fn regime_grid(alpha_steps: usize, lambda_steps: usize, spacing: LambdaSpacing) -> Vec<(f64, f64)> {
    alpha_grid(alpha_steps)
        .flat_map(|a| lambda_grid(lambda_star_unchecked(a), lambda_steps, spacing).map(move |l| (a, l)))
        .collect()
}

/// Tabulates all three bounds over the admissible part of the grid.
pub fn regime_map(alpha_steps: usize, lambda_steps: usize, spacing: LambdaSpacing) -> Result<Vec<RegimeRow>> {
    if alpha_steps < 2 || lambda_steps < 2 {
        return Err(Error::InvalidConfig("regime grids need at least 2 steps"));
    }
    let roots = solve_thresholds()?;
    regime_grid(alpha_steps, lambda_steps, spacing)
        .into_iter()
        .map(|(a, l)| regime_row(a, l, &roots))
        .collect()
}
