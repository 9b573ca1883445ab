use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type used
/// for the computation so that the error type stays non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    ToleranceNotMet { estimate: f64, tolerance: f64 },

    #[error("window too small: neglected mass {tail:e} exceeds {tolerance:e} ({what})")]
    WindowTooSmall {
        what: &'static str,
        tail: f64,
        tolerance: f64,
    },

    #[error("integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("pole of zeta at s = 1")]
    PoleAtOne,

    #[error("pole of gamma at non-positive integer {0}")]
    PoleAtNonPositiveInteger(f64),

    #[error("pole of xi at s = {0}")]
    PoleAtZeroOrOne(f64),

    #[error("character mod {modulus} (index {index}) is not primitive")]
    NonPrimitiveCharacter { modulus: u64, index: usize },

    #[error("imaginary residue {residue:e} exceeds {limit:e} ({what})")]
    ImaginaryResidue {
        what: &'static str,
        residue: f64,
        limit: f64,
    },

    #[error("found {found} sign changes below T = {height}, counting estimate gives {expected:.3}")]
    CountMismatch { found: usize, expected: f64, height: f64 },

    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },

    #[error("{path}:{line}: ordinate {value} is not larger than the previous one")]
    OrderViolation { path: String, line: usize, value: f64 },

    #[error("tail bound {bound:e} cannot be certified below {tolerance:e} ({what})")]
    TailBoundViolation {
        what: &'static str,
        bound: f64,
        tolerance: f64,
    },

    #[error("function parity {function} does not match character parity {character}")]
    ParityMismatch { function: i8, character: i8 },

    #[error("W_infinity forms disagree: duality {duality:e}, calibrated pv {pv:e}, allowed {allowed:e}")]
    DisagreementBeyondTolerance { duality: f64, pv: f64, allowed: f64 },

    #[error("residual {residual:e} exceeds certified budget {budget:e}")]
    BudgetExceeded { residual: f64, budget: f64 },

    #[error("no closed form available: {0}")]
    Unsupported(String),

    #[error("cannot parse expression `{input}`: {message}")]
    Expression { input: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures of numerical certification (tail and window bounds),
    /// as opposed to bad input or a failed identity.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::WindowTooSmall { .. }
                | Error::TailBoundViolation { .. }
                | Error::ToleranceNotMet { .. }
                | Error::CountMismatch { .. }
                | Error::ImaginaryResidue { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
