//! Schwarz functions `ω(z) = c₁z + c₂z² + …` with `|ω| < 1` on the disk.
//!
//! The coefficient body of the first three coefficients is charted by Schur
//! parameters `t₁, t₂, t₃` in the closed unit disk: running the Schur
//! algorithm backwards from a constant tail,
//!
//! ```text
//! ω(z) = z·g₀(z),   g_{k-1}(z) = (t_k + z·g_k(z)) / (1 + conj(t_k)·z·g_k(z)),   g_{m-1} ≡ t_m,
//! ```
//!
//! gives every admissible tuple exactly once for interior parameters. A
//! parameter on the unit circle makes `ω` a finite Blaschke product and freezes
//! all later coefficients.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Capacity of [`SchwarzCoeffs`].
pub const MAX_COEFFS: usize = 4;
/// Capacity of [`SchurParams`]; the chart is implemented for `c₁..c₃`.
pub const MAX_SCHUR: usize = 3;

/// Slack on `|t| ≤ 1` and on the body inequalities.
pub const DISK_TOL: f64 = 1e-12;

/// Radius and sample count of the polynomial modulus screen.
pub const SCREEN_RADIUS: f64 = 0.99;
pub const SCREEN_SAMPLES: usize = 512;
pub const SCREEN_SLACK: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Leading coefficients `c₁..c_m` of a Schwarz function. Entries past `len`
/// read as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchwarzCoeffs {
    c: [Complex64; MAX_COEFFS],
    len: usize,
}

impl SchwarzCoeffs {
    /// Validates the length and the two-coefficient body
    /// `|c₁| ≤ 1`, `|c₂| ≤ 1 − |c₁|²`.
    pub fn new(coeffs: &[Complex64]) -> Result<Self> {
        let w = Self::new_unchecked(coeffs)?;
        let c1 = w.get(1).norm();
        if c1 > 1.0 + DISK_TOL {
            return Err(Error::NotInBody {
                index: 1,
                excess: c1 - 1.0,
            });
        }
        let c2 = w.get(2).norm();
        let room = 1.0 - c1 * c1;
        if c2 > room + DISK_TOL {
            return Err(Error::NotInBody {
                index: 2,
                excess: c2 - room,
            });
        }
        Ok(w)
    }

    /// Stores the tuple with only the length checked.
    pub fn new_unchecked(coeffs: &[Complex64]) -> Result<Self> {
        if coeffs.len() > MAX_COEFFS {
            return Err(Error::TooManyCoefficients {
                len: coeffs.len(),
                max: MAX_COEFFS,
            });
        }
        let mut c = [ZERO; MAX_COEFFS];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(SchwarzCoeffs {
            c,
            len: coeffs.len(),
        })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(&v)
    }

    /// The pure extremal `c_k = 1`, all others zero, padded to length `len`.
    pub fn unit(k: usize, len: usize) -> Self {
        debug_assert!(k >= 1 && k <= len && len <= MAX_COEFFS);
        let mut c = [ZERO; MAX_COEFFS];
        c[k - 1] = ONE;
        SchwarzCoeffs { c, len }
    }

    pub fn zero(len: usize) -> Self {
        SchwarzCoeffs {
            c: [ZERO; MAX_COEFFS],
            len: len.min(MAX_COEFFS),
        }
    }

    /// `c_k`, 1-based; zero for `k` past the stored length.
    pub fn get(&self, k: usize) -> Complex64 {
        if k == 0 || k > self.len {
            ZERO
        } else {
            self.c[k - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c[..self.len]
    }

    /// Coefficients of `ω(e^{iθ}z)·e^{-iθ}`, i.e. `c_k ↦ e^{i(k-1)θ} c_k`.
    pub fn rotate(&self, theta: f64) -> Self {
        let mut out = *self;
        for (k, c) in out.c.iter_mut().enumerate() {
            *c *= Complex64::from_polar(1.0, theta * k as f64);
        }
        out
    }

    /// Evaluates the polynomial `Σ c_k z^k`.
    pub fn eval_polynomial(&self, z: Complex64) -> Complex64 {
        self.as_slice()
            .iter()
            .rev()
            .fold(ZERO, |acc, &c| (acc + c) * z)
    }
}

/// Schur parameters `t₁..t_m`, each in the closed unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchurParams {
    t: [Complex64; MAX_SCHUR],
    len: usize,
}

impl SchurParams {
    pub fn new(t: &[Complex64]) -> Result<Self> {
        if t.len() > MAX_SCHUR {
            return Err(Error::TooManyCoefficients {
                len: t.len(),
                max: MAX_SCHUR,
            });
        }
        for (i, v) in t.iter().enumerate() {
            let m = v.norm();
            if m.is_nan() || m > 1.0 + DISK_TOL {
                return Err(Error::SchurOutOfDisk {
                    index: i + 1,
                    modulus: m,
                });
            }
        }
        let mut arr = [ZERO; MAX_SCHUR];
        arr[..t.len()].copy_from_slice(t);
        Ok(SchurParams { t: arr, len: t.len() })
    }

    pub fn from_real(t: &[f64]) -> Result<Self> {
        let v: Vec<Complex64> = t.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(&v)
    }

    /// Builds parameters already known to lie in the disk (grid points).
    pub(crate) fn from_array(t: [Complex64; MAX_SCHUR], len: usize) -> Self {
        SchurParams { t, len }
    }

    pub fn get(&self, k: usize) -> Complex64 {
        if k == 0 || k > self.len {
            ZERO
        } else {
            self.t[k - 1]
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.t[..self.len]
    }

    /// Lexicographic comparison on `(Re t₁, Im t₁, Re t₂, …)`.
    pub fn lex_cmp(&self, other: &Self) -> core::cmp::Ordering {
        for k in 0..MAX_SCHUR {
            let o = self.t[k]
                .re
                .total_cmp(&other.t[k].re)
                .then(self.t[k].im.total_cmp(&other.t[k].im));
            if o.is_ne() {
                return o;
            }
        }
        self.len.cmp(&other.len)
    }

    /// Value of the Schwarz function realized by these parameters.
    pub fn eval_function(&self, z: Complex64) -> Complex64 {
        if self.len == 0 {
            return ZERO;
        }
        let mut g = self.t[self.len - 1];
        for k in (0..self.len - 1).rev() {
            let t = self.t[k];
            let zg = z * g;
            g = (t + zg) / (ONE + t.conj() * zg);
        }
        z * g
    }
}

/// Maps Schur parameters to `(c₁, c₂, c₃)`:
/// `c₁ = t₁`, `c₂ = (1−|t₁|²)t₂`, `c₃ = (1−|t₁|²)[(1−|t₂|²)t₃ − conj(t₁)t₂²]`.
pub fn schur_to_coeffs(t: &SchurParams) -> SchwarzCoeffs {
    let (t1, t2, t3) = (t.get(1), t.get(2), t.get(3));
    let d1 = (1.0 - t1.norm_sqr()).max(0.0);
    let d2 = (1.0 - t2.norm_sqr()).max(0.0);
    let c = [t1, t2 * d1, (t3 * d2 - t1.conj() * t2 * t2) * d1];
    let mut arr = [ZERO; MAX_COEFFS];
    arr[..t.len].copy_from_slice(&c[..t.len]);
    SchwarzCoeffs {
        c: arr,
        len: t.len,
    }
}

/// Inverse chart: recovers Schur parameters of an admissible tuple of
/// length ≤ 3, failing when the tuple is outside the coefficient body.
///
/// Once some `|t_k| = 1` the remaining coefficients are forced; they must
/// match within [`DISK_TOL`] and the remaining parameters are set to zero.
pub fn coeffs_to_schur(c: &SchwarzCoeffs) -> Result<SchurParams> {
    if c.len() > MAX_SCHUR {
        return Err(Error::TooManyCoefficients {
            len: c.len(),
            max: MAX_SCHUR,
        });
    }
    let m = c.len();
    let mut t = [ZERO; MAX_SCHUR];
    let boundary = |x: f64| (x - 1.0).abs() <= DISK_TOL;
    let check_modulus = |index: usize, v: Complex64| -> Result<()> {
        let r = v.norm();
        if r > 1.0 + DISK_TOL {
            Err(Error::NotInBody {
                index,
                excess: r - 1.0,
            })
        } else {
            Ok(())
        }
    };

    if m == 0 {
        return Ok(SchurParams::from_array(t, 0));
    }
    t[0] = c.get(1);
    check_modulus(1, t[0])?;
    let d1 = 1.0 - t[0].norm_sqr();
    if boundary(t[0].norm()) {
        for k in 2..=m {
            let excess = c.get(k).norm();
            if excess > DISK_TOL {
                return Err(Error::NotInBody { index: k, excess });
            }
        }
        return Ok(SchurParams::from_array(t, m));
    }
    if m >= 2 {
        t[1] = c.get(2) / d1;
        check_modulus(2, t[1])?;
    }
    if m >= 3 {
        let d2 = 1.0 - t[1].norm_sqr();
        let forced = -t[0].conj() * t[1] * t[1] * d1;
        if boundary(t[1].norm()) {
            let excess = (c.get(3) - forced).norm();
            if excess > DISK_TOL {
                return Err(Error::NotInBody { index: 3, excess });
            }
        } else {
            t[2] = (c.get(3) - forced) / (d1 * d2);
            check_modulus(3, t[2])?;
        }
    }
    Ok(SchurParams::from_array(t, m))
}

/// Max of `|Σ c_k z^k|` over `samples` equispaced points on `|z| = radius`.
///
/// This screens the polynomial itself: a tuple passes when its polynomial is
/// a Schwarz function on the slightly smaller disk. Admissible tuples whose
/// partial sums overshoot (e.g. `(1/2, 3/4)`) fail it; use
/// [`coeffs_to_schur`] for exact membership.
pub fn max_modulus(c: &SchwarzCoeffs, radius: f64, samples: usize) -> f64 {
    circle_points(radius, samples)
        .map(|z| c.eval_polynomial(z).norm())
        .fold(0.0, f64::max)
}

/// Max of `|ω(z)|` on `|z| = radius` for the function realized by `t`.
pub fn realized_max_modulus(t: &SchurParams, radius: f64, samples: usize) -> f64 {
    circle_points(radius, samples)
        .map(|z| t.eval_function(z).norm())
        .fold(0.0, f64::max)
}

/// `max_modulus(c, 0.99, 512) ≤ 1 + 1e-9`.
pub fn passes_screen(c: &SchwarzCoeffs) -> bool {
    max_modulus(c, SCREEN_RADIUS, SCREEN_SAMPLES) <= 1.0 + SCREEN_SLACK
}

fn circle_points(radius: f64, samples: usize) -> impl Iterator<Item = Complex64> {
    let n = samples.max(1);
    (0..n).map(move |j| Complex64::from_polar(radius, 2.0 * PI * j as f64 / n as f64))
}

/// A grid point in the closed disk; `boundary` marks points placed on the
/// unit circle so later parameters can be collapsed without a float test.
#[derive(Clone, Copy, Debug, PartialEq)]
struct DiskPoint {
    value: Complex64,
    boundary: bool,
}

/// Polar grid over the Schur-parameter polydisk.
///
/// Moduli are `i/(density−1)`, `i = 0..density`, so both the centre and the
/// unit circle are always hit; phases are `2πj/phases`. A zero modulus yields
/// one point, and once a parameter sits on the circle every later parameter
/// is fixed to zero. With `first_real` the first parameter only takes the
/// nonnegative real moduli.
#[derive(Clone, Debug)]
pub struct SchurGrid {
    levels: [Vec<DiskPoint>; MAX_SCHUR],
    m: usize,
    idx: [usize; MAX_SCHUR],
    done: bool,
}

impl SchurGrid {
    pub fn new(m: usize, density: usize, phases: usize, first_real: bool) -> Self {
        assert!((1..=MAX_SCHUR).contains(&m), "m must be in 1..=3");
        assert!(density >= 2 && phases >= 1);
        let disk = disk_grid(density, phases);
        let reals: Vec<DiskPoint> = (0..density)
            .map(|i| {
                let r = i as f64 / (density - 1) as f64;
                DiskPoint {
                    value: Complex64::new(r, 0.0),
                    boundary: i == density - 1,
                }
            })
            .collect();
        let first = if first_real { reals } else { disk.clone() };
        SchurGrid {
            levels: [first, disk.clone(), disk],
            m,
            idx: [0; MAX_SCHUR],
            done: false,
        }
    }

    fn collapsed(&self, level: usize) -> bool {
        (0..level).any(|l| self.levels[l][self.idx[l]].boundary)
    }

    fn level_len(&self, level: usize) -> usize {
        if self.collapsed(level) {
            1
        } else {
            self.levels[level].len()
        }
    }

    fn current(&self) -> SchurParams {
        let mut t = [ZERO; MAX_SCHUR];
        for (l, slot) in t.iter_mut().enumerate().take(self.m) {
            if !self.collapsed(l) {
                *slot = self.levels[l][self.idx[l]].value;
            }
        }
        SchurParams::from_array(t, self.m)
    }

    fn advance(&mut self) {
        for l in (0..self.m).rev() {
            if self.idx[l] + 1 < self.level_len(l) {
                self.idx[l] += 1;
                for later in l + 1..self.m {
                    self.idx[later] = 0;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for SchurGrid {
    type Item = SchurParams;

    fn next(&mut self) -> Option<SchurParams> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

fn disk_grid(density: usize, phases: usize) -> Vec<DiskPoint> {
    let mut pts = Vec::with_capacity(1 + (density - 1) * phases);
    pts.push(DiskPoint {
        value: ZERO,
        boundary: false,
    });
    for i in 1..density {
        let r = i as f64 / (density - 1) as f64;
        for j in 0..phases {
            let theta = 2.0 * PI * j as f64 / phases as f64;
            let value = if j == 0 {
                Complex64::new(r, 0.0)
            } else {
                Complex64::from_polar(r, theta)
            };
            pts.push(DiskPoint {
                value,
                boundary: i == density - 1,
            });
        }
    }
    pts
}

/// Default number of phases per modulus in search grids.
pub const DEFAULT_PHASES: usize = 12;

/// Images of the full-phase Schur grid for `m ∈ {1,2,3}` coefficients,
/// preceded by the pure extremals `c_k = 1` when requested.
pub fn sample_body(
    m: usize,
    grid_density: usize,
    include_extremals: bool,
) -> impl Iterator<Item = SchwarzCoeffs> {
    let extremals = (1..=m)
        .filter(move |_| include_extremals)
        .map(move |k| SchwarzCoeffs::unit(k, m));
    extremals.chain(SchurGrid::new(m, grid_density, DEFAULT_PHASES, false).map(|t| schur_to_coeffs(&t)))
}
