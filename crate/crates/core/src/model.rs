//! Molecular parameters, unit scaling, potentials and regime classification.

use std::fmt;

use thiserror::Error;

use crate::constants;

/// |c_h| below this is treated as the Morse limit c_h = 0.
pub const MORSE_CH_TOL: f64 = 1e-12;
/// Evaluating the potential this close to r₀ (Å) is an error.
pub const SINGULARITY_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("r = {r} Å is within {guard} Å of the singularity r0 = {r0} Å")]
    Singularity { r: f64, r0: f64, guard: f64 },
    #[error("r = {0} Å is outside the physical range r >= 0")]
    Radius(f64),
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ModelError {
    ModelError::Invalid {
        field,
        reason: reason.into(),
    }
}

/// One diatomic system in spectroscopic units.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    pub name: String,
    /// Well depth, cm⁻¹.
    pub d: f64,
    /// Equilibrium bond length, Å.
    pub r_e: f64,
    /// Tietz-Hua range parameter b_h, Å⁻¹.
    pub b_h: f64,
    /// Dimensionless shape parameter, |c_h| < 1.
    pub c_h: f64,
    /// Reduced mass, amu.
    pub mu: f64,
}

impl MoleculeParams {
    pub fn new(
        name: impl Into<String>,
        d: f64,
        r_e: f64,
        b_h: f64,
        c_h: f64,
        mu: f64,
    ) -> Result<Self, ModelError> {
        let p = MoleculeParams {
            name: name.into(),
            d,
            r_e,
            b_h,
            c_h,
            mu,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for (field, v) in [("D", self.d), ("r_e", self.r_e), ("b_h", self.b_h), ("mu", self.mu)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(field, format!("must be finite and > 0, got {v}")));
            }
        }
        check_ch(self.c_h)
    }

    /// Same molecule with a different c_h.
    pub fn with_ch(&self, c_h: f64) -> Result<Self, ModelError> {
        check_ch(c_h)?;
        Ok(MoleculeParams {
            c_h,
            ..self.clone()
        })
    }
}

fn check_ch(c_h: f64) -> Result<(), ModelError> {
    if !(c_h.is_finite() && c_h.abs() < 1.0) {
        return Err(invalid("c_h", format!("|c_h| < 1 required, got {c_h}")));
    }
    Ok(())
}

/// Quantities in inverse-length² units consumed by the spectral formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledParams {
    /// d̃ = 2μD/ħ², Å⁻².
    pub d_tilde: f64,
    pub bh: f64,
    pub ch: f64,
    pub re: f64,
    /// ħ²/(2μ), cm⁻¹·Å².
    pub conv: f64,
}

pub fn scale(params: &MoleculeParams) -> Result<ScaledParams, ModelError> {
    params.validate()?;
    let conv = constants::conv(params.mu);
    Ok(ScaledParams {
        d_tilde: params.d / conv,
        bh: params.b_h,
        ch: params.c_h,
        re: params.r_e,
        conv,
    })
}

/// ε = 2μE/ħ² for an energy in cm⁻¹.
pub fn scale_energy(sp: &ScaledParams, e: f64) -> f64 {
    e / sp.conv
}

/// Tietz-Hua potential in cm⁻¹.
pub fn potential_th(params: &MoleculeParams, r: f64) -> Result<f64, ModelError> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(ModelError::Radius(r));
    }
    if let Some(r0) = singular_point(params.r_e, params.b_h, params.c_h) {
        if (r - r0).abs() < SINGULARITY_GUARD {
            return Err(ModelError::Singularity {
                r,
                r0,
                guard: SINGULARITY_GUARD,
            });
        }
    }
    let x = -params.b_h * (r - params.r_e);
    // 1 − y and 1 − c·y without cancellation near r_e and r₀
    let num = -x.exp_m1();
    let den = if params.c_h > 0.0 {
        -(x + params.c_h.ln()).exp_m1()
    } else {
        1.0 - params.c_h * x.exp()
    };
    let q = num / den;
    Ok(params.d * q * q)
}

/// Morse potential D(1 − e^{−β(r−r_e)})² in the units of `d`.
pub fn potential_morse(d: f64, beta: f64, r_e: f64, r: f64) -> f64 {
    let q = (-beta * (r - r_e)).exp_m1();
    d * q * q
}

/// Morse range parameter β = b_h/(1 − c_h).
pub fn morse_beta(b_h: f64, c_h: f64) -> f64 {
    b_h / (1.0 - c_h)
}

/// Smallest c_h for which the closed-form case applies: e^{−b_h r_e}.
pub fn threshold_ch(params: &MoleculeParams) -> f64 {
    threshold_from_shape(params.b_h, params.r_e)
}

pub fn threshold_from_shape(b_h: f64, r_e: f64) -> f64 {
    (-b_h * r_e).exp()
}

fn singular_point(r_e: f64, b_h: f64, c_h: f64) -> Option<f64> {
    (c_h > 0.0).then(|| r_e + c_h.ln() / b_h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
            Case::V => "V",
        })
    }
}

/// Which solution branch applies and on which radial domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub case: Case,
    pub domain_lo: f64,
    /// Always +∞.
    pub domain_hi: f64,
    pub r0: Option<f64>,
    /// e^{−b_h r_e}.
    pub threshold: f64,
}

impl Regime {
    /// Classification from the shape parameters alone.
    pub fn from_shape(b_h: f64, r_e: f64, c_h: f64) -> Regime {
        let threshold = threshold_from_shape(b_h, r_e);
        let r0 = singular_point(r_e, b_h, c_h);
        let (case, domain_lo) = if c_h.abs() < MORSE_CH_TOL {
            (Case::V, 0.0)
        } else if c_h < 0.0 {
            (Case::IV, 0.0)
        } else if c_h >= threshold {
            (Case::I, r0.unwrap_or(0.0).max(0.0))
        } else {
            (Case::III, 0.0)
        };
        Regime {
            case,
            domain_lo,
            domain_hi: f64::INFINITY,
            r0,
            threshold,
        }
    }

    /// The companion segment (0, r₀) of case I. It has no bound-state
    /// solution here and is only reported.
    pub fn companion(&self) -> Option<Regime> {
        match (self.case, self.r0) {
            (Case::I, Some(r0)) if r0 > 0.0 => Some(Regime {
                case: Case::II,
                domain_lo: 0.0,
                domain_hi: r0,
                ..*self
            }),
            _ => None,
        }
    }
}

pub fn classify_regime(params: &MoleculeParams) -> Regime {
    Regime::from_shape(params.b_h, params.r_e, params.c_h)
}
