//! The class `U(α, λ)`: functions `f(z) = z + a₂z² + …` with
//! `|(z/f)^{1+α} f′ − 1| < λ` on the unit disk.
//!
//! Every member is generated by a Schwarz function `ω` through
//!
//! ```text
//! f(z)/z = (1 − αλ Σ cₙ zⁿ/(n − α))^{−1/α},
//! ```
//!
//! which this module realizes on truncated series, alongside the closed forms
//! for `a₂..a₄` and the logarithmic coefficients `γ₁..γ₃`.

use libm::sqrt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::schwarz::SchwarzCoeffs;
use crate::series::TruncatedSeries;

/// Default radius, sample count and order for the membership residual.
pub const RESIDUAL_RADIUS: f64 = 0.9;
pub const RESIDUAL_SAMPLES: usize = 256;
pub const RESIDUAL_ORDER: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams {
    alpha: f64,
    lambda: f64,
}

impl ClassParams {
    /// Accepts `0 < alpha < 1` and `0 < lambda < 1`; `lambda` above the
    /// starlikeness threshold is allowed here and flagged by [`Self::within_star`].
    pub fn new(alpha: f64, lambda: f64) -> Result<Self> {
        check_open_unit("alpha", alpha)?;
        check_open_unit("lambda", lambda)?;
        Ok(ClassParams { alpha, lambda })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn lambda_star(&self) -> f64 {
        lambda_star_unchecked(self.alpha)
    }

    pub fn within_star(&self) -> bool {
        self.lambda <= self.lambda_star()
    }

    /// Errors with [`Error::NotCovered`] unless `λ ≤ λ⋆(α)`.
    pub fn require_within_star(&self) -> Result<()> {
        if self.within_star() {
            Ok(())
        } else {
            Err(Error::NotCovered {
                lambda: self.lambda,
                lambda_star: self.lambda_star(),
            })
        }
    }
}

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            lower: 0.0,
            upper: 1.0,
        })
    }
}

/// Starlikeness threshold `λ⋆(α) = (1−α)/√((1−α)² + α²)`.
pub fn lambda_star(alpha: f64) -> Result<f64> {
    check_open_unit("alpha", alpha)?;
    Ok(lambda_star_unchecked(alpha))
}

pub(crate) fn lambda_star_unchecked(alpha: f64) -> f64 {
    let b = 1.0 - alpha;
    b / sqrt(b * b + alpha * alpha)
}

/// `γ₁, γ₂, γ₃` with `log(f(z)/z) = 2 Σ γₙ zⁿ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogCoeffs {
    pub gamma: [Complex64; 3],
}

impl LogCoeffs {
    /// `γ_k`, 1-based.
    pub fn get(&self, k: usize) -> Complex64 {
        self.gamma[k - 1]
    }
}

/// Truncated series of `f(z)/z` generated by `w`.
pub fn build_function(p: &ClassParams, w: &SchwarzCoeffs, order: usize) -> Result<TruncatedSeries> {
    let required = w.len() + 1;
    if order < required {
        return Err(Error::OrderTooSmall { order, required });
    }
    let a = p.alpha;
    let inner = TruncatedSeries::from_coeffs(
        order,
        core::iter::once(Complex64::new(1.0, 0.0)).chain(
            w.as_slice()
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (-a * p.lambda / ((i + 1) as f64 - a))),
        ),
    );
    inner.pow_frac(-1.0 / a)
}

/// Closed forms for `(a₂, a₃, a₄)`.
pub fn coeffs_a(p: &ClassParams, w: &SchwarzCoeffs) -> [Complex64; 3] {
    let (a, l) = (p.alpha, p.lambda);
    let (c1, c2, c3) = (w.get(1), w.get(2), w.get(3));
    let b1 = 1.0 - a;
    let a2 = c1 * (l / b1);
    let a3 = c2 * (l / (2.0 - a)) + c1 * c1 * ((1.0 + a) * l * l / (2.0 * b1 * b1));
    let a4 = c3 * (l / (3.0 - a))
        + c1 * c2 * ((1.0 + a) * l * l / (b1 * (2.0 - a)))
        + c1 * c1 * c1 * ((1.0 + a) * (1.0 + 2.0 * a) * l * l * l / (6.0 * b1 * b1 * b1));
    [a2, a3, a4]
}

/// `γ₁ = a₂/2`, `γ₂ = (2a₃ − a₂²)/4`, `γ₃ = (a₄ − a₂a₃ + a₂³/3)/2`.
pub fn log_coeffs_from_a(a: [Complex64; 3]) -> LogCoeffs {
    let [a2, a3, a4] = a;
    LogCoeffs {
        gamma: [
            a2 * 0.5,
            (a3 * 2.0 - a2 * a2) * 0.25,
            (a4 - a2 * a3 + a2 * a2 * a2 / 3.0) * 0.5,
        ],
    }
}

/// Closed forms for `γ₁..γ₃` in terms of `c₁..c₃` and `(μ, ν)`.
pub fn log_coeffs_closed(p: &ClassParams, w: &SchwarzCoeffs) -> LogCoeffs {
    let (a, l) = (p.alpha, p.lambda);
    let (c1, c2, c3) = (w.get(1), w.get(2), w.get(3));
    let b1 = 1.0 - a;
    let (mu, nu) = mu_nu(p);
    LogCoeffs {
        gamma: [
            c1 * (l / (2.0 * b1)),
            (c2 * (2.0 * l / (2.0 - a)) + c1 * c1 * (a * l * l / (b1 * b1))) * 0.25,
            (c3 + c1 * c2 * mu + c1 * c1 * c1 * nu) * (l / (2.0 * (3.0 - a))),
        ],
    }
}

/// `γ₁..γ₃` read off `½ log(f(z)/z)` from a series of `f(z)/z`.
pub fn log_coeffs_series(f_over_z: &TruncatedSeries) -> Result<LogCoeffs> {
    let log = f_over_z.log1()?;
    Ok(LogCoeffs {
        gamma: [log.coeff(1) * 0.5, log.coeff(2) * 0.5, log.coeff(3) * 0.5],
    })
}

/// `μ = α(3−α)λ/((1−α)(2−α))`, `ν = α²(3−α)λ²/(3(1−α)³)`.
pub fn mu_nu(p: &ClassParams) -> (f64, f64) {
    let (a, l) = (p.alpha, p.lambda);
    let b1 = 1.0 - a;
    let mu = a * (3.0 - a) * l / (b1 * (2.0 - a));
    let nu = a * a * (3.0 - a) * l * l / (3.0 * b1 * b1 * b1);
    (mu, nu)
}

/// Max over `|z| = radius` of `|(z/f)^{1+α} f′(z) − 1|`.
///
/// The residual is assembled on series as `(f/z)^{−(1+α)} · (f/z + z(f/z)′) − 1`
/// and only then evaluated, so for `f` built from a polynomial `ω` it equals
/// `λ|ω(z)|` up to rounding.
pub fn membership_residual(
    f_over_z: &TruncatedSeries,
    p: &ClassParams,
    radius: f64,
    samples: usize,
) -> Result<f64> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::OutOfRange {
            name: "radius",
            value: radius,
            lower: 0.0,
            upper: 1.0,
        });
    }
    let power = f_over_z.pow_frac(-(1.0 + p.alpha))?;
    let derivative = f_over_z + &f_over_z.euler();
    let residual = &power.mul(&derivative) - &TruncatedSeries::one(f_over_z.order());
    let n = samples.max(1);
    Ok((0..n)
        .map(|j| {
            let z = Complex64::from_polar(radius, 2.0 * core::f64::consts::PI * j as f64 / n as f64);
            residual.evaluate(z).norm()
        })
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schwarz::max_modulus;

    fn p(a: f64, l: f64) -> ClassParams {
        ClassParams::new(a, l).unwrap()
    }

    fn w(c: &[f64]) -> SchwarzCoeffs {
        SchwarzCoeffs::from_real(c).unwrap()
    }

    #[test]
    fn lambda_star_values_and_limits() {
        assert!((lambda_star(0.5).unwrap() - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((lambda_star(1e-12).unwrap() - 1.0).abs() < 1e-11);
        assert!(lambda_star(1.0 - 1e-12).unwrap() < 1e-11);
        assert!(lambda_star(0.0).is_err());
        assert!(lambda_star(1.0).is_err());
        assert!(lambda_star(f64::NAN).is_err());
    }

    #[test]
    fn params_validation_and_star_flag() {
        assert!(ClassParams::new(0.5, 1.0).is_err());
        assert!(ClassParams::new(-0.1, 0.5).is_err());
        assert!(p(0.5, 0.5).within_star());
        let outside = p(0.9, 0.5);
        assert!(!outside.within_star());
        assert!(matches!(
            outside.require_within_star(),
            Err(Error::NotCovered { .. })
        ));
    }

    #[test]
    fn build_function_for_f1() {
        let params = p(0.5, 0.5);
        let f = build_function(&params, &w(&[1.0, 0.0, 0.0]), 6).unwrap();
        assert!((f.coeff(0).re - 1.0).abs() < 1e-15);
        assert!((f.coeff(1).re - 1.0).abs() < 1e-14);
        // direct binomial series of (1 − (αλ/(1−α))z)^{−1/α}
        let direct = TruncatedSeries::from_real(6, &[1.0, -0.5 * 0.5 / 0.5])
            .pow_frac(-2.0)
            .unwrap();
        for k in 0..=6 {
            assert!((f.coeff(k) - direct.coeff(k)).norm() < 1e-13);
        }
    }

    #[test]
    fn build_function_identity_and_order_check() {
        let f = build_function(&p(0.3, 0.4), &w(&[0.0, 0.0, 0.0]), 8).unwrap();
        assert_eq!(f, TruncatedSeries::one(8));
        assert!(matches!(
            build_function(&p(0.3, 0.4), &w(&[0.0, 0.0, 0.0]), 3),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn closed_form_a_examples() {
        let a = coeffs_a(&p(0.5, 0.5), &w(&[1.0, 0.0, 0.0]));
        assert!((a[0].re - 1.0).abs() < 1e-15);
        assert!((a[1].re - 0.75).abs() < 1e-15);
        assert!((a[2].re - 0.5).abs() < 1e-15);
        let params = p(0.37, 0.42);
        let a = coeffs_a(&params, &w(&[0.0, 1.0, 0.0]));
        assert_eq!(a[0].norm(), 0.0);
        assert!((a[1].re - 0.42 / 1.63).abs() < 1e-15);
        assert_eq!(a[2].norm(), 0.0);
    }

    #[test]
    fn closed_form_gamma_examples() {
        let g = log_coeffs_closed(&p(0.5, 0.5), &w(&[1.0, 0.0, 0.0]));
        assert!((g.get(1).re - 0.5).abs() < 1e-15);
        let params = p(0.4, 0.3);
        let g = log_coeffs_closed(&params, &w(&[0.0, 0.0, 1.0]));
        assert_eq!(g.get(1).norm(), 0.0);
        assert_eq!(g.get(2).norm(), 0.0);
        assert!((g.get(3).re - 0.3 / (2.0 * 2.6)).abs() < 1e-15);
        let g = log_coeffs_closed(&p(0.6, 0.3), &w(&[0.0, 1.0, 0.0]));
        assert!((g.get(2).re - 0.25 * (0.6 / 1.4)).abs() < 1e-15);
        assert!((g.get(2).re - 0.107_142_857_142_857).abs() < 1e-14);
    }

    #[test]
    fn mu_nu_examples() {
        let (mu, nu) = mu_nu(&p(0.5, 0.5));
        assert!((mu - 0.625 / 0.75).abs() < 1e-15);
        assert!((nu - 0.156_25 / 0.375).abs() < 1e-15);
        let (mu, nu) = mu_nu(&p(0.5, 1e-12));
        assert!(mu < 1e-11 && nu < 1e-22);
    }

    #[test]
    fn residual_of_identity_is_zero() {
        let one = TruncatedSeries::one(24);
        let r = membership_residual(&one, &p(0.4, 0.3), 0.9, 64).unwrap();
        assert!(r < 1e-15);
        assert!(membership_residual(&one, &p(0.4, 0.3), 1.0, 64).is_err());
    }

    #[test]
    fn residual_matches_lambda_times_omega() {
        let params = p(0.5, 0.5);
        let f = build_function(&params, &w(&[1.0, 0.0, 0.0]), 24).unwrap();
        let r = membership_residual(&f, &params, 0.9, 256).unwrap();
        assert!((r - 0.45).abs() < 1e-3);

        let params = p(0.3, 0.4);
        let omega = w(&[0.0, 0.0, 1.0]);
        let f = build_function(&params, &omega, 24).unwrap();
        let r = membership_residual(&f, &params, 0.8, 256).unwrap();
        assert!((r - 0.2048).abs() < 1e-3);
        assert!((r - 0.4 * max_modulus(&omega, 0.8, 256)).abs() < 1e-10);
    }
}
