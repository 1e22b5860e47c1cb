use core::fmt;

use num_complex::Complex64;

/// Errors raised by the series, class and bound machinery.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A series operation that fixes the principal branch got the wrong constant term.
    ConstantTerm { found: Complex64, expected: f64 },
    /// A real parameter fell outside its admissible interval.
    OutOfRange {
        name: &'static str,
        value: f64,
        lower: f64,
        upper: f64,
    },
    /// A Schur parameter lies outside the closed unit disk.
    SchurOutOfDisk { index: usize, modulus: f64 },
    /// A coefficient tuple is not in the coefficient body of the Schwarz class.
    NotInBody { index: usize, excess: f64 },
    /// Too many coefficients for the fixed-capacity containers.
    TooManyCoefficients { len: usize, max: usize },
    /// Truncation order too small for the requested coefficients.
    OrderTooSmall { order: usize, required: usize },
    /// `lambda` exceeds the starlikeness threshold, where the bounds are not stated.
    NotCovered { lambda: f64, lambda_star: f64 },
    /// Coefficient index outside `1..=3`.
    InvalidIndex(usize),
    /// A `(μ, ν)` point outside the covered regions has no Φ value.
    UncoveredPoint { mu: f64, nu: f64 },
    /// Root bracketing found zero or several sign-change cells.
    Bracket {
        polynomial: &'static str,
        sign_changes: usize,
    },
    /// A search configuration violated its invariants.
    InvalidConfig(&'static str),
    /// Two computation routes disagree beyond tolerance.
    Mismatch {
        what: &'static str,
        discrepancy: f64,
        tolerance: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ConstantTerm { found, expected } => write!(
                f,
                "series constant term is {found}, expected {expected} (principal branch)"
            ),
            Error::OutOfRange {
                name,
                value,
                lower,
                upper,
            } => write!(f, "{name} = {value} is outside ({lower}, {upper})"),
            Error::SchurOutOfDisk { index, modulus } => write!(
                f,
                "Schur parameter t{index} has modulus {modulus} > 1"
            ),
            Error::NotInBody { index, excess } => write!(
                f,
                "coefficient tuple leaves the Schwarz coefficient body at c{index} (Schur modulus exceeds 1 by {excess:e})"
            ),
            Error::TooManyCoefficients { len, max } => {
                write!(f, "{len} coefficients given, at most {max} supported")
            }
            Error::OrderTooSmall { order, required } => {
                write!(f, "truncation order {order} is below the required {required}")
            }
            Error::NotCovered {
                lambda,
                lambda_star,
            } => write!(
                f,
                "lambda exceeds lambda_star = {lambda_star} (lambda = {lambda})"
            ),
            Error::InvalidIndex(k) => write!(f, "coefficient index {k} is not in 1..=3"),
            Error::UncoveredPoint { mu, nu } => write!(
                f,
                "(mu, nu) = ({mu}, {nu}) lies outside D1, D2 and D3"
            ),
            Error::Bracket {
                polynomial,
                sign_changes,
            } => write!(
                f,
                "polynomial {polynomial} has {sign_changes} sign-change cells on (0, 1), expected exactly one"
            ),
            Error::InvalidConfig(msg) => write!(f, "invalid search configuration: {msg}"),
            Error::Mismatch {
                what,
                discrepancy,
                tolerance,
            } => write!(
                f,
                "{what}: discrepancy {discrepancy:e} exceeds tolerance {tolerance:e}"
            ),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
