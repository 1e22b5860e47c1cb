//! Sharp bounds for the first three logarithmic coefficients of the class
//! `U(α, λ)` of normalized analytic functions with
//! `|(z/f(z))^{1+α} f′(z) − 1| < λ`, together with the machinery to check
//! them numerically.
//!
//! - [`series`]: truncated complex power series (product, log, exp, real powers).
//! - [`schwarz`]: Schwarz-function coefficients and the Schur-parameter chart.
//! - [`uclass`]: the class itself, its series representation and closed forms.
//! - [`bounds`]: threshold curves, regime roots, the `Φ(μ, ν)` classifier and
//!   the piecewise bounds.
//! - [`verify`]: brute-force dominance and sharpness checks.
//!
//! The crate is `no_std` with `alloc`; the `std` feature only adds
//! `std::error::Error` for [`Error`].

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod bounds;
mod error;
pub mod schwarz;
pub mod series;
pub mod uclass;
pub mod verify;

pub use bounds::{BoundResult, Extremal, PsPoint, Regime, Region, ThresholdReport};
pub use error::{Error, Result};
pub use schwarz::{SchurParams, SchwarzCoeffs};
pub use series::TruncatedSeries;
pub use uclass::{ClassParams, LogCoeffs};
pub use verify::{SearchConfig, VerifyReport};

pub use num_complex::Complex64;
