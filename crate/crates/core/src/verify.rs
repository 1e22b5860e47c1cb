//! Brute-force confirmation of the coefficient bounds.
//!
//! `|γ_k|` is maximized over the Schur chart of the coefficient body: a polar
//! grid first, then a few rounds of local grid refinement around the
//! incumbent. Scores are produced by an [`Executor`] so callers can fan the
//! grid out over threads; the reduction itself is sequential and breaks ties
//! by the lexicographically largest Schur parameters, so reports do not depend
//! on the executor.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{bound_gamma, BoundResult, Extremal};
use crate::error::{Error, Result};
use crate::schwarz::{
    realized_max_modulus, schur_to_coeffs, SchurGrid, SchurParams, SchwarzCoeffs, DEFAULT_PHASES, MAX_SCHUR,
};
use crate::series::DEFAULT_ORDER;
use crate::uclass::{build_function, coeffs_a, log_coeffs_closed, log_coeffs_from_a, log_coeffs_series, ClassParams};

/// Allowed excess of a brute-force maximum over a theorem bound.
pub const DOMINANCE_TOL: f64 = 1e-9;
/// Closed-form extremal vs bound.
pub const SHARPNESS_TOL: f64 = 1e-10;
/// Series-pipeline extremal vs bound.
pub const SHARPNESS_SERIES_TOL: f64 = 1e-8;
/// Closed forms vs the order-12 series pipeline.
pub const PIPELINE_TOL: f64 = 1e-10;
/// Scores this close to the maximum count as ties.
pub const TIE_TOL: f64 = 1e-13;

/// Points per coordinate in one refinement round.
const REFINE_POINTS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub density: usize,
    pub refine_rounds: usize,
    pub refine_shrink: f64,
    /// Radius at which the realized Schwarz function of the incumbent is
    /// checked against `|ω(z)| ≤ |z|`.
    pub radius_screen: f64,
    pub phases: usize,
    /// Search all phases of `t₁` instead of fixing it real and nonnegative.
    pub full_phase: bool,
    /// Extra uniformly random Schur points drawn from `seed`.
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            density: 9,
            refine_rounds: 3,
            refine_shrink: 0.2,
            radius_screen: 0.99,
            phases: DEFAULT_PHASES,
            full_phase: false,
            random_samples: 0,
            seed: 0,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.density < 5 {
            return Err(Error::InvalidConfig("density must be at least 5"));
        }
        if !(self.refine_shrink > 0.0 && self.refine_shrink < 1.0) {
            return Err(Error::InvalidConfig("refine_shrink must lie in (0, 1)"));
        }
        if !(self.radius_screen > 0.0 && self.radius_screen < 1.0) {
            return Err(Error::InvalidConfig("radius_screen must lie in (0, 1)"));
        }
        if self.phases == 0 {
            return Err(Error::InvalidConfig("phases must be positive"));
        }
        Ok(())
    }
}

/// Maps a scoring function over a batch of Schur points, preserving order.
pub trait Executor {
    fn scores(&self, points: &[SchurParams], score: &(dyn Fn(&SchurParams) -> f64 + Sync)) -> Vec<f64>;
}

/// Single-threaded executor.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn scores(&self, points: &[SchurParams], score: &(dyn Fn(&SchurParams) -> f64 + Sync)) -> Vec<f64> {
        points.iter().map(score).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyReport {
    pub k: usize,
    pub empirical_max: f64,
    pub bound: BoundResult,
    /// `bound − empirical_max`, absent when the regime is uncovered.
    pub gap: Option<f64>,
    pub attained_at: SchwarzCoeffs,
    pub schur: SchurParams,
    /// Max of the incumbent's realized `|ω|` on `|z| = radius_screen`.
    pub screen_max: f64,
    pub evaluations: usize,
}

impl VerifyReport {
    /// Dominance holds (vacuously when uncovered).
    pub fn dominated(&self) -> bool {
        !matches!(self.gap, Some(g) if g < -DOMINANCE_TOL)
    }
}

/// `|γ_k|` from the closed forms.
pub fn gamma_abs(p: &ClassParams, k: usize, c: &SchwarzCoeffs) -> f64 {
    log_coeffs_closed(p, c).get(k).norm()
}

pub fn brute_force_gamma_max(p: &ClassParams, k: usize, cfg: &SearchConfig) -> Result<VerifyReport> {
    brute_force_gamma_max_with(p, k, cfg, &Sequential)
}

pub fn brute_force_gamma_max_with(
    p: &ClassParams,
    k: usize,
    cfg: &SearchConfig,
    exec: &dyn Executor,
) -> Result<VerifyReport> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidIndex(k));
    }
    cfg.validate()?;
    let bound = bound_gamma(p, k)?;

    let params = *p;
    let score = move |t: &SchurParams| gamma_abs(&params, k, &schur_to_coeffs(t));

    let mut population: Vec<SchurParams> = (1..=k).map(|j| unit_params(j, k)).collect();
    population.extend(SchurGrid::new(k, cfg.density, cfg.phases, !cfg.full_phase));
    population.extend(random_params(k, cfg));

    let mut best = Incumbent::default();
    let mut evaluations = 0;
    best.absorb(&population, &exec.scores(&population, &score));
    evaluations += population.len();

    let mut radial = 1.0 / (cfg.density - 1) as f64;
    let mut angular = 2.0 * PI / cfg.phases as f64;
    for _ in 0..cfg.refine_rounds {
        let Some(center) = best.params else { break };
        let batch = refinement_box(&center, radial, angular, !cfg.full_phase);
        best.absorb(&batch, &exec.scores(&batch, &score));
        evaluations += batch.len();
        radial *= cfg.refine_shrink;
        angular *= cfg.refine_shrink;
    }

    let schur = best.params.expect("population is never empty");
    let empirical_max = best.score;
    Ok(VerifyReport {
        k,
        empirical_max,
        bound,
        gap: bound.value.map(|b| b - empirical_max),
        attained_at: schur_to_coeffs(&schur),
        schur,
        screen_max: realized_max_modulus(&schur, cfg.radius_screen, 256),
        evaluations,
    })
}

fn unit_params(j: usize, m: usize) -> SchurParams {
    let mut t = [Complex64::new(0.0, 0.0); MAX_SCHUR];
    t[j - 1] = Complex64::new(1.0, 0.0);
    SchurParams::from_array(t, m)
}

fn random_params(m: usize, cfg: &SearchConfig) -> Vec<SchurParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.random_samples)
        .map(|_| random_schur(&mut rng, m))
        .collect()
}

/// Uniform point of the `m`-fold polydisk.
pub fn random_schur<R: Rng + ?Sized>(rng: &mut R, m: usize) -> SchurParams {
    let mut t = [Complex64::new(0.0, 0.0); MAX_SCHUR];
    for slot in t.iter_mut().take(m) {
        let r = libm::sqrt(rng.gen::<f64>());
        let theta = 2.0 * PI * rng.gen::<f64>();
        *slot = Complex64::from_polar(r, theta);
    }
    SchurParams::from_array(t, m)
}

#[derive(Default)]
struct Incumbent {
    score: f64,
    params: Option<SchurParams>,
}

impl Incumbent {
    fn offer(&mut self, t: &SchurParams, s: f64) {
        match self.params {
            None => {
                self.score = s;
                self.params = Some(*t);
            }
            Some(cur) => {
                if s > self.score + TIE_TOL {
                    self.score = s;
                    self.params = Some(*t);
                } else if s >= self.score - TIE_TOL {
                    if t.lex_cmp(&cur).is_gt() {
                        self.params = Some(*t);
                    }
                    self.score = self.score.max(s);
                }
            }
        }
    }

    fn absorb(&mut self, points: &[SchurParams], scores: &[f64]) {
        debug_assert_eq!(points.len(), scores.len());
        // exact batch max first, so near-ties are judged against it
        let batch_max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        for (t, &s) in points.iter().zip(scores) {
            if s >= batch_max - TIE_TOL {
                self.offer(t, s);
            }
        }
    }
}

/// Local polar grid around `center`: each modulus within `±radial`, each
/// phase within `±angular`, [`REFINE_POINTS`] per coordinate. With
/// `first_real`, `t₁` keeps phase zero.
fn refinement_box(center: &SchurParams, radial: f64, angular: f64, first_real: bool) -> Vec<SchurParams> {
    let m = center.len();
    let offsets: Vec<f64> = (0..REFINE_POINTS)
        .map(|i| -1.0 + 2.0 * i as f64 / (REFINE_POINTS - 1) as f64)
        .collect();
    // per parameter: candidate (modulus, phase) pairs
    let mut axes: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for k in 1..=m {
        let (r0, th0) = center.get(k).to_polar();
        let radii: Vec<f64> = offsets.iter().map(|o| (r0 + o * radial).clamp(0.0, 1.0)).collect();
        let phases: Vec<f64> = if k == 1 && first_real {
            alloc::vec![0.0]
        } else {
            offsets.iter().map(|o| th0 + o * angular).collect()
        };
        let mut pts = Vec::with_capacity(radii.len() * phases.len());
        for &r in &radii {
            for &th in &phases {
                pts.push(if th == 0.0 { Complex64::new(r, 0.0) } else { Complex64::from_polar(r, th) });
            }
        }
        axes.push(pts);
    }
    let total: usize = axes.iter().map(Vec::len).product();
    let mut out = Vec::with_capacity(total);
    let mut idx = [0usize; MAX_SCHUR];
    for _ in 0..total {
        let mut t = [Complex64::new(0.0, 0.0); MAX_SCHUR];
        for (k, slot) in t.iter_mut().enumerate().take(m) {
            *slot = axes[k][idx[k]];
        }
        out.push(SchurParams::from_array(t, m));
        for k in (0..m).rev() {
            idx[k] += 1;
            if idx[k] < axes[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

/// Outcome of evaluating a regime's designated extremal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SharpnessReport {
    pub k: usize,
    pub bound: BoundResult,
    pub extremal: Extremal,
    /// `|γ_k|` from the closed forms.
    pub closed_form: f64,
    /// `|γ_k|` from the series pipeline at order 12.
    pub series: f64,
}

/// Evaluates the extremal `c_j = 1` designated by the regime and checks that
/// it attains the bound through both computation routes.
pub fn verify_sharpness(p: &ClassParams, k: usize) -> Result<SharpnessReport> {
    let bound = bound_gamma(p, k)?;
    let (Some(value), Some(extremal)) = (bound.value, bound.extremal) else {
        return Err(Error::NotCovered {
            lambda: p.lambda(),
            lambda_star: p.lambda_star(),
        });
    };
    let w = SchwarzCoeffs::unit(extremal.index(), 3);
    let closed_form = gamma_abs(p, k, &w);
    let series = log_coeffs_series(&build_function(p, &w, DEFAULT_ORDER)?)?
        .get(k)
        .norm();
    let closed_err = (closed_form - value).abs();
    if closed_err > SHARPNESS_TOL {
        return Err(Error::Mismatch {
            what: "closed-form extremal vs bound",
            discrepancy: closed_err,
            tolerance: SHARPNESS_TOL,
        });
    }
    let series_err = (series - value).abs();
    if series_err > SHARPNESS_SERIES_TOL {
        return Err(Error::Mismatch {
            what: "series extremal vs bound",
            discrepancy: series_err,
            tolerance: SHARPNESS_SERIES_TOL,
        });
    }
    Ok(SharpnessReport {
        k,
        bound,
        extremal,
        closed_form,
        series,
    })
}

/// Both routes for `a₂..a₄` and `γ₁..γ₃`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineComparison {
    pub a_closed: [Complex64; 3],
    pub a_series: [Complex64; 3],
    pub gamma_closed: [Complex64; 3],
    pub gamma_series: [Complex64; 3],
    /// `γ` recombined from the closed-form `a` values.
    pub gamma_from_a: [Complex64; 3],
}

impl PipelineComparison {
    pub fn max_discrepancy(&self) -> f64 {
        let pairs = self
            .a_closed
            .iter()
            .zip(&self.a_series)
            .chain(self.gamma_closed.iter().zip(&self.gamma_series));
        pairs.map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

pub fn compare_pipelines(p: &ClassParams, w: &SchwarzCoeffs, order: usize) -> Result<PipelineComparison> {
    let f = build_function(p, w, order.max(4))?;
    let a_closed = coeffs_a(p, w);
    Ok(PipelineComparison {
        a_closed,
        a_series: [f.coeff(1), f.coeff(2), f.coeff(3)],
        gamma_closed: log_coeffs_closed(p, w).gamma,
        gamma_series: log_coeffs_series(&f)?.gamma,
        gamma_from_a: log_coeffs_from_a(a_closed).gamma,
    })
}

/// Max closed-form vs series discrepancy over `a₂..a₄, γ₁..γ₃` at order 12;
/// errors when it reaches [`PIPELINE_TOL`].
pub fn cross_check_pipeline(p: &ClassParams, w: &SchwarzCoeffs) -> Result<f64> {
    let d = compare_pipelines(p, w, DEFAULT_ORDER)?.max_discrepancy();
    if d < PIPELINE_TOL {
        Ok(d)
    } else {
        Err(Error::Mismatch {
            what: "closed form vs series pipeline",
            discrepancy: d,
            tolerance: PIPELINE_TOL,
        })
    }
}
