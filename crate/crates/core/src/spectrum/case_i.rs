//! Closed-form spectrum and Jacobi-polynomial eigenfunctions of case I.

use crate::model::{MoleculeParams, ScaledParams};
use crate::specfun::{jacobi_p, ln_gamma};

use super::exponents::{delta_root, exponents_eps};
use super::{require_case, BoundState, Method, SpectrumError, SpectrumReport};
use crate::model::Case;

/// Largest integer strictly below `q`, or −1 when `q ≤ 0`.
pub fn largest_integer_below(q: f64) -> i64 {
    if !(q > 0.0) {
        -1
    } else {
        q.ceil() as i64 - 1
    }
}

/// K = d̃(1/c² − 1)/b² and δ for case I.
fn k_and_delta(sp: &ScaledParams) -> (f64, f64) {
    let c = sp.ch;
    let k = sp.d_tilde * (1.0 - c) * (1.0 + c) / (c * c * sp.bh * sp.bh);
    (k, 0.5 + delta_root(sp, c - 1.0))
}

/// λ_n = (K/(n+δ) − (n+δ))/2, the decay exponent of level n.
fn lambda_n(k: f64, delta: f64, n: usize) -> f64 {
    let m = n as f64 + delta;
    0.5 * (k / m - m)
}

/// Index of the highest bound level, −1 if there is none.
pub fn count_case_i(params: &MoleculeParams) -> Result<i64, SpectrumError> {
    let (sp, _) = require_case(params, Case::I, "count_case_i")?;
    let (k, delta) = k_and_delta(&sp);
    Ok(largest_integer_below(k.sqrt() - delta))
}

pub fn energy_closed_case_i(params: &MoleculeParams) -> Result<SpectrumReport, SpectrumError> {
    let (sp, regime) = require_case(params, Case::I, "energy_closed_case_i")?;
    let (k, delta) = k_and_delta(&sp);
    let n_max = largest_integer_below(k.sqrt() - delta);
    let b2 = sp.bh * sp.bh;
    let mut states = Vec::new();
    for n in 0..=n_max.max(-1) {
        let n = n as usize;
        let lam = lambda_n(k, delta, n);
        let eps = sp.d_tilde - b2 * lam * lam;
        let e = params.d - sp.conv * b2 * lam * lam;
        states.push(BoundState {
            n_r: n,
            e,
            eps,
            exps: exponents_eps(&sp, eps),
            method: Method::ClosedForm,
            marginal: false,
        });
    }
    let mut report = SpectrumReport::new(params.clone(), regime, states);
    report.n_r_max = n_max;
    Ok(report)
}

/// ln N_n of the normalized eigenfunction.
fn ln_norm(b: f64, n: usize, lam: f64, delta: f64) -> Result<f64, SpectrumError> {
    let nf = n as f64;
    let ln_n_fact = ln_gamma(nf + 1.0)?;
    let ln_sq = (2.0 * b * lam * (nf + lam + delta) / (nf + delta)).ln() + ln_n_fact
        + ln_gamma(nf + 2.0 * lam + 2.0 * delta)?
        - ln_gamma(nf + 2.0 * lam + 1.0)?
        - ln_gamma(nf + 2.0 * delta)?;
    Ok(0.5 * ln_sq)
}

/// Normalized radial function R_n(r) on (r₀, ∞).
pub fn wavefunction_case_i(params: &MoleculeParams, n_r: usize, r: f64) -> Result<f64, SpectrumError> {
    let (sp, regime) = require_case(params, Case::I, "wavefunction_case_i")?;
    let (k, delta) = k_and_delta(&sp);
    let n_max = largest_integer_below(k.sqrt() - delta);
    if n_r as i64 > n_max {
        return Err(SpectrumError::NoSuchState { n_r, n_r_max: n_max });
    }
    let r0 = regime.r0.unwrap_or(0.0);
    if !(r > r0 && r.is_finite()) {
        return Err(SpectrumError::Radius { r, lo: r0 });
    }
    let lam = lambda_n(k, delta, n_r);
    let ln_s = sp.ch.ln() - sp.bh * (r - sp.re);
    let s = ln_s.exp();
    let ln_one_minus_s = (-ln_s.exp_m1()).ln();
    let p = jacobi_p(n_r, 2.0 * lam, 2.0 * delta - 1.0, 1.0 - 2.0 * s)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    let ln_abs = ln_norm(sp.bh, n_r, lam, delta)? + lam * ln_s + delta * ln_one_minus_s + p.abs().ln();
    Ok(p.signum() * ln_abs.exp())
}
