//! Case V: the Morse limit c_h = 0.

use crate::model::{morse_beta, Case, MoleculeParams};
use crate::specfun::kummer_1f1_scaled;

use super::case_i::largest_integer_below;
use super::exponents::exponents_eps;
use super::{require_case, BoundState, Method, SpectrumError, SpectrumReport};

/// √d̃/β, the Morse anharmonicity parameter.
fn morse_k(d_tilde: f64, beta: f64) -> f64 {
    d_tilde.sqrt() / beta
}

/// Morse ladder E_n = D − conv·β²(n + 1/2 − √d̃/β)².
pub fn energy_morse(params: &MoleculeParams) -> Result<SpectrumReport, SpectrumError> {
    let (sp, regime) = require_case(params, Case::V, "energy_morse")?;
    let beta = morse_beta(sp.bh, sp.ch);
    let k = morse_k(sp.d_tilde, beta);
    let n_max = largest_integer_below(k - 0.5);
    let mut states = Vec::new();
    for n in 0..=n_max.max(-1) {
        let lam = k - 0.5 - n as f64;
        let eps = sp.d_tilde - beta * beta * lam * lam;
        states.push(BoundState {
            n_r: n as usize,
            e: params.d - sp.conv * beta * beta * lam * lam,
            eps,
            exps: exponents_eps(&sp, eps),
            method: Method::MorseClosed,
            marginal: false,
        });
    }
    let mut report = SpectrumReport::new(params.clone(), regime, states);
    report.n_r_max = n_max;
    Ok(report)
}

/// (sign, ln|R|) of the unnormalized Morse solution of level `n_r`.
pub(crate) fn wavefunction_morse_log(
    params: &MoleculeParams,
    n_r: usize,
    r: f64,
) -> Result<(f64, f64), SpectrumError> {
    let (sp, _) = require_case(params, Case::V, "wavefunction_morse")?;
    let beta = morse_beta(sp.bh, sp.ch);
    let k = morse_k(sp.d_tilde, beta);
    let n_max = largest_integer_below(k - 0.5);
    if n_r as i64 > n_max {
        return Err(SpectrumError::NoSuchState { n_r, n_r_max: n_max });
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(SpectrumError::Radius { r, lo: 0.0 });
    }
    let lam = k - 0.5 - n_r as f64;
    let x = -beta * (r - sp.re);
    let y = x.exp();
    let f = kummer_1f1_scaled(-(n_r as f64), 2.0 * lam + 1.0, 2.0 * k * y)?;
    if f.signum() == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    Ok((f.signum(), lam * x - k * y + f.ln_abs()))
}

/// Unnormalized Morse eigenfunction (N = 1).
pub fn wavefunction_morse(params: &MoleculeParams, n_r: usize, r: f64) -> Result<f64, SpectrumError> {
    let (s, l) = wavefunction_morse_log(params, n_r, r)?;
    Ok(s * l.exp())
}
