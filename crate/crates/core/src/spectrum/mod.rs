//! Bound-state solvers for every regime.
//!
//! | case | solver |
//! |------|--------|
//! | I    | closed form, Jacobi-polynomial eigenfunctions |
//! | III  | zeros of ₂F₁ at z₀ = c_h e^{b_h r_e} |
//! | IV   | zeros of ₂F₁ at z₀ = \|c_h\|/(e^{−b_h r_e} + \|c_h\|) |
//! | V    | Morse closed form |
//!
//! Case II (the segment inside r₀) is only reported, never solved.

mod case_i;
mod exponents;
mod morse;
mod transcend;

use std::fmt;

use thiserror::Error;

use crate::model::{classify_regime, scale, Case, ModelError, MoleculeParams, Regime, ScaledParams};
use crate::oracle::{OracleError, DEFAULT_POINTS};
use crate::roots::RootError;
use crate::specfun::SpecFunError;

pub use case_i::{count_case_i, energy_closed_case_i, largest_integer_below, wavefunction_case_i};
pub use exponents::{exponents_at, Exponents};
pub use morse::{energy_morse, wavefunction_morse};
pub use transcend::{
    energy_roots_case_iii, energy_roots_case_iii_with, energy_roots_case_iv,
    energy_roots_case_iv_with, inner_turning_point, transcend_value_case_iii,
    transcend_value_case_iv, wavefunction_case_iii, wavefunction_case_iv,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpectrumError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{op} applies to case {expected}, but the parameters are case {found}")]
    WrongRegime {
        op: &'static str,
        expected: Case,
        found: Case,
    },
    #[error("energy {e} cm⁻¹ is outside the bound range (0, D = {d})")]
    Energy { e: f64, d: f64 },
    #[error("no bound state n_r = {n_r} (highest is {n_r_max})")]
    NoSuchState { n_r: usize, n_r_max: i64 },
    #[error("r = {r} Å is outside the domain (lower end {lo} Å)")]
    Radius { r: f64, lo: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    TranscendIII,
    TranscendIV,
    MorseClosed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::TranscendIII => "transcend_iii",
            Method::TranscendIV => "transcend_iv",
            Method::MorseClosed => "morse_closed",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub n_r: usize,
    /// Energy above the well bottom, cm⁻¹.
    pub e: f64,
    /// Scaled energy ε = E/conv, Å⁻².
    pub eps: f64,
    pub exps: Exponents,
    pub method: Method,
    /// Within 1e-8·D of the dissociation limit.
    pub marginal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RootStatus {
    Converged,
    Failed(String),
}

/// How one transcendental root was obtained.
#[derive(Debug, Clone, PartialEq)]
pub struct RootDiagnostic {
    /// Scan interval containing the sign change, cm⁻¹.
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub status: RootStatus,
    /// Oracle level count just below the root (should equal n_r).
    pub oracle_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub params: MoleculeParams,
    pub regime: Regime,
    /// Ascending in energy, n_r = 0, 1, 2, …
    pub states: Vec<BoundState>,
    /// Highest level index; −1 for an empty spectrum.
    pub n_r_max: i64,
    pub diagnostics: Vec<RootDiagnostic>,
    pub warnings: Vec<String>,
    /// Oracle level count below the scan ceiling, when it was consulted.
    pub oracle_count: Option<usize>,
}

impl SpectrumReport {
    fn new(params: MoleculeParams, regime: Regime, states: Vec<BoundState>) -> Self {
        let n_r_max = states.len() as i64 - 1;
        SpectrumReport {
            params,
            regime,
            states,
            n_r_max,
            diagnostics: Vec::new(),
            warnings: Vec::new(),
            oracle_count: None,
        }
    }

    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.e).collect()
    }
}

/// Controls for the transcendental solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    /// Energies in the initial uniform scan.
    pub scan_points: usize,
    /// Relative tolerance of the bracketed refinement in E.
    pub xtol_rel: f64,
    pub max_iter: usize,
    /// Compare the root count with the Numerov oracle and rescan on mismatch.
    pub oracle_check: bool,
    pub oracle_points: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            scan_points: 4001,
            xtol_rel: 1e-12,
            max_iter: 200,
            oracle_check: true,
            oracle_points: DEFAULT_POINTS,
        }
    }
}

fn require_case(
    params: &MoleculeParams,
    expected: Case,
    op: &'static str,
) -> Result<(ScaledParams, Regime), SpectrumError> {
    let sp = scale(params)?;
    let regime = classify_regime(params);
    if regime.case != expected {
        return Err(SpectrumError::WrongRegime {
            op,
            expected,
            found: regime.case,
        });
    }
    Ok((sp, regime))
}

/// Full spectrum with the solver appropriate to the regime.
pub fn solve(params: &MoleculeParams, opts: &SolveOptions) -> Result<SpectrumReport, SpectrumError> {
    match classify_regime(params).case {
        Case::I => energy_closed_case_i(params),
        Case::III => energy_roots_case_iii_with(params, opts),
        Case::IV => energy_roots_case_iv_with(params, opts),
        Case::V => energy_morse(params),
        Case::II => unreachable!("classification never yields case II"),
    }
}

/// (sign, ln|R|) of a state's radial function: normalized in case I,
/// C = 1 otherwise.
pub fn wavefunction_log(params: &MoleculeParams, state: &BoundState, r: f64) -> Result<(f64, f64), SpectrumError> {
    match classify_regime(params).case {
        Case::I => {
            let v = wavefunction_case_i(params, state.n_r, r)?;
            Ok((if v == 0.0 { 0.0 } else { v.signum() }, v.abs().ln()))
        }
        Case::V => morse::wavefunction_morse_log(params, state.n_r, r),
        case => transcend::wavefunction_log(case, params, state.e, r),
    }
}

pub fn wavefunction(params: &MoleculeParams, state: &BoundState, r: f64) -> Result<f64, SpectrumError> {
    let (s, l) = wavefunction_log(params, state, r)?;
    Ok(s * l.exp())
}

/// Radii and peak-normalized values of a state on `n` interior points,
/// the input for node counting.
///
/// The grid runs to r_e + 40/b_h. Its lower end is r₀ in case I and 0 in
/// case V. In cases III/IV it is the inner classical turning point: the
/// solution between the origin and the turning point is node-free, and
/// there the ₂F₁ value is a near-cancelling residual whose rounding noise
/// would otherwise register as spurious sign changes.
pub fn nodal_samples(
    params: &MoleculeParams,
    state: &BoundState,
    n: usize,
) -> Result<Vec<(f64, f64)>, SpectrumError> {
    let regime = classify_regime(params);
    let lo = match regime.case {
        Case::III | Case::IV => inner_turning_point(params, state.e)?,
        _ => regime.domain_lo,
    };
    let hi = params.r_e + 40.0 / params.b_h;
    let mut raw = Vec::with_capacity(n);
    for i in 0..n {
        let r = lo + (hi - lo) * (i as f64 + 1.0) / (n as f64 + 1.0);
        raw.push((r, wavefunction_log(params, state, r)?));
    }
    let peak = raw
        .iter()
        .map(|(_, (_, l))| *l)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(raw
        .into_iter()
        .map(|(r, (s, l))| (r, s * (l - peak).exp()))
        .collect())
}

/// A bound state with unit L² norm on its domain.
///
/// Case I uses the analytic normalization. In the other cases the C = 1
/// solution is rescaled by quadrature of its square up to r_e + 60/b_h.
/// In cases III/IV the quadrature starts where the function has decayed
/// below 1e-10 of its peak inside the inner turning point, or where it stops
/// decaying, which keeps the cancellation residual near the origin of very
/// deep wells out of the norm.
#[derive(Debug, Clone)]
pub struct NormalizedState {
    pub params: MoleculeParams,
    pub state: BoundState,
    /// Cases III/IV: below this radius the state is reported as 0.
    pub support_lo: f64,
    ln_scale: f64,
}

impl NormalizedState {
    pub fn new(params: &MoleculeParams, state: &BoundState) -> Result<Self, SpectrumError> {
        let regime = classify_regime(params);
        let mut out = NormalizedState {
            params: params.clone(),
            state: *state,
            support_lo: regime.domain_lo,
            ln_scale: 0.0,
        };
        if regime.case == Case::I {
            return Ok(out);
        }
        let hi = params.r_e + 60.0 / params.b_h;
        let start = match regime.case {
            Case::III | Case::IV => inner_turning_point(params, state.e)?,
            _ => regime.domain_lo,
        };
        const SAMPLES: usize = 2000;
        let h = (hi - start) / SAMPLES as f64;
        let mut peak = f64::NEG_INFINITY;
        for i in 0..=SAMPLES {
            peak = peak.max(wavefunction_log(params, state, start + h * i as f64)?.1);
        }
        // The true solution decays monotonically inward from the turning
        // point, so the first rise marks the cancellation noise floor.
        let cut = 1e-10f64.ln();
        let mut lo = start;
        let mut prev = wavefunction_log(params, state, start)?.1;
        while lo > regime.domain_lo {
            let r = (lo - h).max(regime.domain_lo);
            let l = wavefunction_log(params, state, r)?.1;
            if l > prev {
                break;
            }
            lo = r;
            prev = l;
            if l - peak < cut {
                break;
            }
        }
        let f = |r: f64| match wavefunction_log(params, state, r) {
            Ok((s, l)) => s * (l - peak).exp(),
            Err(_) => f64::NAN,
        };
        let norm = crate::oracle::quad_norm(f, lo, hi)?;
        out.ln_scale = -peak - 0.5 * norm.ln();
        out.support_lo = lo;
        Ok(out)
    }

    pub fn value(&self, r: f64) -> Result<f64, SpectrumError> {
        let truncated = matches!(self.state.method, Method::TranscendIII | Method::TranscendIV);
        if truncated && (0.0..self.support_lo).contains(&r) {
            return Ok(0.0);
        }
        let (s, l) = wavefunction_log(&self.params, &self.state, r)?;
        Ok(s * (l + self.ln_scale).exp())
    }
}

