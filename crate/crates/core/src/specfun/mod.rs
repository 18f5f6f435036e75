//! Special-function kernel: log-gamma, Gauss ₂F₁, Kummer ₁F₁ and Jacobi
//! polynomials for the real parameter ranges produced by the quantization
//! conditions.
//!
//! All functions are pure.

mod dd;
mod gamma;
mod hyper;
mod jacobi;

use thiserror::Error;

pub use gamma::ln_gamma;
pub use hyper::{gauss_2f1_scaled, kummer_1f1_scaled, TARGET_RTOL, TERM_CAP};
pub use jacobi::jacobi_p;


#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecFunError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("series did not converge within {terms} terms (partial value {partial})")]
    Convergence { partial: f64, terms: usize },
}

/// Value of a series evaluation together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub est_abs_error: f64,
    pub terms_used: usize,
    /// Whether the double-word term path was needed.
    pub escalated: bool,
}

/// A series value stored as `mantissa * exp(ln_scale)`.
///
/// The quantization functions routinely exceed the `f64` range, so the
/// spectrum solvers work with this form and only look at the sign or the
/// logarithm of the magnitude. `err` is in the same scaled units as
/// `mantissa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSeries {
    pub mantissa: f64,
    pub ln_scale: f64,
    pub err: f64,
    pub terms_used: usize,
    pub escalated: bool,
}

impl ScaledSeries {
    pub(crate) fn one() -> Self {
        ScaledSeries {
            mantissa: 1.0,
            ln_scale: 0.0,
            err: 0.0,
            terms_used: 1,
            escalated: false,
        }
    }

    pub(crate) fn zero() -> Self {
        ScaledSeries {
            mantissa: 0.0,
            ln_scale: 0.0,
            err: 0.0,
            terms_used: 0,
            escalated: false,
        }
    }

    pub fn signum(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }

    /// ln|value|; `-inf` for an exact zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.ln_scale
    }

    /// The value as a plain double (may overflow to ±inf).
    pub fn value(&self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.signum() * self.ln_abs().exp()
        }
    }

    /// |value| expressed in units of `exp(ln_scale)`.
    pub(crate) fn abs_in_scale(&self, ln_scale: f64) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            (self.ln_abs() - ln_scale).exp()
        }
    }

    pub(crate) fn scale_ln(mut self, ln: f64) -> Self {
        self.ln_scale += ln;
        self
    }

    pub(crate) fn with_sign(mut self, s: f64) -> Self {
        self.mantissa *= s;
        self
    }

    pub(crate) fn add(&self, other: &ScaledSeries) -> ScaledSeries {
        if self.mantissa == 0.0 && self.err == 0.0 {
            return ScaledSeries {
                terms_used: self.terms_used + other.terms_used,
                escalated: self.escalated || other.escalated,
                ..*other
            };
        }
        if other.mantissa == 0.0 && other.err == 0.0 {
            return ScaledSeries {
                terms_used: self.terms_used + other.terms_used,
                escalated: self.escalated || other.escalated,
                ..*self
            };
        }
        let reference = self.ln_scale.max(other.ln_scale);
        let f1 = (self.ln_scale - reference).exp();
        let f2 = (other.ln_scale - reference).exp();
        ScaledSeries {
            mantissa: self.mantissa * f1 + other.mantissa * f2,
            ln_scale: reference,
            err: self.err * f1 + other.err * f2,
            terms_used: self.terms_used + other.terms_used,
            escalated: self.escalated || other.escalated,
        }
    }
}

impl From<ScaledSeries> for SeriesResult {
    fn from(s: ScaledSeries) -> Self {
        let err = if s.err == 0.0 {
            0.0
        } else {
            (s.err.ln() + s.ln_scale).exp()
        };
        SeriesResult {
            value: s.value(),
            est_abs_error: err,
            terms_used: s.terms_used,
            escalated: s.escalated,
        }
    }
}

/// ₂F₁(a, b; c; z) for real parameters and 0 ≤ z < 1.
///
/// Terminating series (a or b a non-positive integer) are summed exactly as
/// polynomials. Values beyond the `f64` range come back as ±inf; use
/// [`gauss_2f1_scaled`] to keep them.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<SeriesResult, SpecFunError> {
    gauss_2f1_scaled(a, b, c, z).map(Into::into)
}

/// Kummer's confluent function ₁F₁(a; c; z).
pub fn kummer_1f1(a: f64, c: f64, z: f64) -> Result<SeriesResult, SpecFunError> {
    kummer_1f1_scaled(a, c, z).map(Into::into)
}
