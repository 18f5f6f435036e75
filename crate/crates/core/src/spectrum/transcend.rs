//! Cases III and IV: the quantization condition is a zero of a Gauss
//! function at the fixed argument corresponding to r = 0, located by a dense
//! energy scan and Brent refinement.

use std::thread;

use crate::model::{potential_th, Case, MoleculeParams, ScaledParams};
use crate::oracle::{molecule_grid, th_potential, NodeCounter};
use crate::roots::{brent, RootError};
use crate::specfun::{gauss_2f1_scaled, ScaledSeries, SeriesResult, SpecFunError};

use super::exponents::{delta_root, exponents_eps};
use super::{
    require_case, BoundState, Method, RootDiagnostic, RootStatus, SolveOptions, SpectrumError,
    SpectrumReport,
};

/// Gauss parameters (a, b, c) of the case III/IV solution at scaled energy ε.
///
/// The differences λ + δ − γ are formed as (P² − Q²)/(P + Q) with P² − Q²
/// expanded analytically; the direct difference loses all digits when
/// |c_h| is small and both terms are ~1/|c_h|.
fn gauss_params(case: Case, sp: &ScaledParams, eps: f64) -> (f64, f64, f64) {
    let b2 = sp.bh * sp.bh;
    let lam = (sp.d_tilde - eps).max(0.0).sqrt() / sp.bh;
    let q = (sp.d_tilde / (sp.ch * sp.ch) - eps).sqrt() / sp.bh;
    match case {
        Case::III => {
            let p = delta_root(sp, sp.ch - 1.0);
            let diff = 0.25 + (sp.d_tilde * (1.0 - 2.0 / sp.ch) + eps) / b2;
            (lam + 0.5 + diff / (p + q), lam + 0.5 + p + q, 2.0 * lam + 1.0)
        }
        _ => {
            let p = delta_root(sp, sp.ch.abs() + 1.0);
            let diff = 0.25 + (sp.d_tilde * (1.0 + 2.0 / sp.ch.abs()) + eps) / b2;
            (lam + 0.5 - diff / (q + p), lam + q + 0.5 + p, 2.0 * lam + 1.0)
        }
    }
}

/// Argument of the Gauss function at r = 0.
fn z_at_origin(case: Case, sp: &ScaledParams) -> f64 {
    match case {
        Case::III => (sp.ch.ln() + sp.bh * sp.re).exp(),
        _ => {
            let c = sp.ch.abs();
            c / ((-sp.bh * sp.re).exp() + c)
        }
    }
}

fn method_for(case: Case) -> Method {
    if case == Case::III {
        Method::TranscendIII
    } else {
        Method::TranscendIV
    }
}

fn check_energy(params: &MoleculeParams, e: f64) -> Result<(), SpectrumError> {
    if e > 0.0 && e < params.d {
        Ok(())
    } else {
        Err(SpectrumError::Energy { e, d: params.d })
    }
}

fn transcend_scaled(case: Case, sp: &ScaledParams, e: f64) -> Result<ScaledSeries, SpecFunError> {
    let (a, b, c) = gauss_params(case, sp, e / sp.conv);
    gauss_2f1_scaled(a, b, c, z_at_origin(case, sp))
}

/// Left-hand side of the case III quantization condition at energy E.
pub fn transcend_value_case_iii(params: &MoleculeParams, e: f64) -> Result<SeriesResult, SpectrumError> {
    let (sp, _) = require_case(params, Case::III, "transcend_value_case_iii")?;
    check_energy(params, e)?;
    Ok(transcend_scaled(Case::III, &sp, e)?.into())
}

/// Left-hand side of the case IV quantization condition at energy E.
pub fn transcend_value_case_iv(params: &MoleculeParams, e: f64) -> Result<SeriesResult, SpectrumError> {
    let (sp, _) = require_case(params, Case::IV, "transcend_value_case_iv")?;
    check_energy(params, e)?;
    Ok(transcend_scaled(Case::IV, &sp, e)?.into())
}

/// Continuous, sign-preserving compression of a scaled value:
/// sign(v)·ln(1 + |v|). Near a root it equals v to first order.
fn compress(s: &ScaledSeries) -> f64 {
    let la = s.ln_abs();
    let mag = if la > 36.0 {
        la
    } else {
        la.exp().ln_1p()
    };
    s.signum() * mag
}

struct Scan {
    roots: Vec<(f64, RootDiagnostic)>,
    stalled: Vec<RootDiagnostic>,
    failures: Vec<String>,
}

fn scan(case: Case, sp: &ScaledParams, d: f64, points: usize, opts: &SolveOptions) -> Scan {
    let lo = 1e-9 * d;
    let hi = d * (1.0 - 1e-9);
    let grid: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();
    let eval = |e: f64| transcend_scaled(case, sp, e).map(|s| compress(&s));

    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = grid.len().div_ceil(workers);
    let values: Vec<Result<f64, SpecFunError>> = thread::scope(|scope| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&e| eval(e)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });

    let mut out = Scan {
        roots: Vec::new(),
        stalled: Vec::new(),
        failures: Vec::new(),
    };
    let mut prev: Option<(f64, f64)> = None;
    let mut brackets = Vec::new();
    for (&e, v) in grid.iter().zip(&values) {
        match v {
            Ok(g) => {
                if *g == 0.0 {
                    brackets.push((e, e, 0.0, 0.0));
                } else if let Some((pe, pg)) = prev {
                    if pg != 0.0 && pg.signum() != g.signum() {
                        brackets.push((pe, e, pg, *g));
                    }
                }
                prev = Some((e, *g));
            }
            Err(err) => {
                out.failures.push(format!("evaluation failed at E = {e}: {err}"));
                prev = None;
            }
        }
    }

    let refined: Vec<(f64, f64, Result<crate::roots::Root, RootError>)> = thread::scope(|scope| {
        let handles: Vec<_> = brackets
            .iter()
            .map(|&(a, b, fa, fb)| {
                scope.spawn(move || {
                    let res = if a == b {
                        Ok(crate::roots::Root { x: a, iterations: 0 })
                    } else {
                        brent(eval, a, b, fa, fb, opts.xtol_rel, opts.max_iter)
                    };
                    (a, b, res)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("refinement worker panicked"))
            .collect()
    });
    for (a, b, res) in refined {
        match res {
            Ok(root) => out.roots.push((
                root.x,
                RootDiagnostic {
                    bracket: (a, b),
                    iterations: root.iterations,
                    status: RootStatus::Converged,
                    oracle_index: None,
                },
            )),
            Err(err) => out.stalled.push(RootDiagnostic {
                bracket: (a, b),
                iterations: opts.max_iter,
                status: RootStatus::Failed(err.to_string()),
                oracle_index: None,
            }),
        }
    }
    out
}

fn energy_roots(case: Case, params: &MoleculeParams, opts: &SolveOptions) -> Result<SpectrumReport, SpectrumError> {
    let op = if case == Case::III {
        "energy_roots_case_iii"
    } else {
        "energy_roots_case_iv"
    };
    let (sp, regime) = require_case(params, case, op)?;
    let d = params.d;
    let e_hi = d * (1.0 - 1e-9);

    let counter = if opts.oracle_check {
        let grid = molecule_grid(params, opts.oracle_points)?;
        Some(NodeCounter::new(th_potential(params), grid, sp.conv)?)
    } else {
        None
    };
    let oracle_count = counter.as_ref().map(|c| c.count_below(e_hi));

    let mut result = scan(case, &sp, d, opts.scan_points, opts);
    let mut warnings = Vec::new();
    if let Some(n) = oracle_count {
        if result.roots.len() != n {
            warnings.push(format!(
                "scan with {} points found {} roots, oracle counts {n}; rescanning at 10x density",
                opts.scan_points,
                result.roots.len()
            ));
            result = scan(case, &sp, d, 10 * (opts.scan_points - 1) + 1, opts);
            if result.roots.len() != n {
                warnings.push(format!(
                    "completeness: {} roots found, oracle counts {n}",
                    result.roots.len()
                ));
            }
        }
    }
    warnings.extend(result.failures);
    for s in &result.stalled {
        warnings.push(format!(
            "root in [{}, {}] not refined: {:?}",
            s.bracket.0, s.bracket.1, s.status
        ));
    }

    result.roots.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut states: Vec<BoundState> = Vec::with_capacity(result.roots.len());
    let mut diagnostics = Vec::with_capacity(result.roots.len());
    for (n, (e, mut diag)) in result.roots.into_iter().enumerate() {
        if let Some(counter) = &counter {
            // Sturm count just below this root: the midpoint to the previous
            // root (or the well bottom) must have exactly n levels beneath it.
            let below = match states.last() {
                Some(prev) => 0.5 * (e + prev.e),
                None => 0.5 * e,
            };
            let idx = counter.count_below(below);
            diag.oracle_index = Some(idx);
            if idx != n {
                warnings.push(format!(
                    "root {n} at E = {e}: oracle places {idx} levels below it"
                ));
            }
        }
        let eps = e / sp.conv;
        states.push(BoundState {
            n_r: n,
            e,
            eps,
            exps: exponents_eps(&sp, eps),
            method: method_for(case),
            marginal: e > d * (1.0 - 1e-8),
        });
        diagnostics.push(diag);
    }
    diagnostics.extend(result.stalled);

    let mut report = SpectrumReport::new(params.clone(), regime, states);
    report.diagnostics = diagnostics;
    report.warnings = warnings;
    report.oracle_count = oracle_count;
    Ok(report)
}

/// All case III levels with the default scan and oracle completeness check.
pub fn energy_roots_case_iii(params: &MoleculeParams) -> Result<SpectrumReport, SpectrumError> {
    energy_roots(Case::III, params, &SolveOptions::default())
}

pub fn energy_roots_case_iii_with(
    params: &MoleculeParams,
    opts: &SolveOptions,
) -> Result<SpectrumReport, SpectrumError> {
    energy_roots(Case::III, params, opts)
}

/// All case IV levels with the default scan and oracle completeness check.
pub fn energy_roots_case_iv(params: &MoleculeParams) -> Result<SpectrumReport, SpectrumError> {
    energy_roots(Case::IV, params, &SolveOptions::default())
}

pub fn energy_roots_case_iv_with(
    params: &MoleculeParams,
    opts: &SolveOptions,
) -> Result<SpectrumReport, SpectrumError> {
    energy_roots(Case::IV, params, opts)
}

/// (sign, ln|R|) of the unnormalized case III/IV solution; the values
/// themselves can exceed the f64 range for deep wells.
pub(crate) fn wavefunction_log(
    case: Case,
    params: &MoleculeParams,
    e: f64,
    r: f64,
) -> Result<(f64, f64), SpectrumError> {
    let (sp, _) = require_case(params, case, "wavefunction")?;
    check_energy(params, e)?;
    if !(r >= 0.0 && r.is_finite()) {
        return Err(SpectrumError::Radius { r, lo: 0.0 });
    }
    let eps = e / sp.conv;
    let (a, b, c) = gauss_params(case, &sp, eps);
    let x = -sp.bh * (r - sp.re);
    let (ln_s, ln_one_minus_s, power) = match case {
        Case::III => {
            let ln_s = sp.ch.ln() + x;
            (ln_s, (-ln_s.exp()).ln_1p(), 0.5 + delta_root(&sp, sp.ch - 1.0))
        }
        _ => {
            let cy = sp.ch.abs() * x.exp();
            let l1p = cy.ln_1p();
            let gamma = (sp.d_tilde / (sp.ch * sp.ch) - eps).sqrt() / sp.bh;
            (sp.ch.abs().ln() + x - l1p, -l1p, gamma)
        }
    };
    let f = gauss_2f1_scaled(a, b, c, ln_s.exp())?;
    if f.signum() == 0.0 {
        return Ok((0.0, f64::NEG_INFINITY));
    }
    let lam = (c - 1.0) / 2.0;
    Ok((f.signum(), lam * ln_s + power * ln_one_minus_s + f.ln_abs()))
}

/// Unnormalized case III solution (C = 1) at energy E.
pub fn wavefunction_case_iii(params: &MoleculeParams, e: f64, r: f64) -> Result<f64, SpectrumError> {
    let (s, l) = wavefunction_log(Case::III, params, e, r)?;
    Ok(s * l.exp())
}

/// Unnormalized case IV solution (C = 1) at energy E.
pub fn wavefunction_case_iv(params: &MoleculeParams, e: f64, r: f64) -> Result<f64, SpectrumError> {
    let (s, l) = wavefunction_log(Case::IV, params, e, r)?;
    Ok(s * l.exp())
}

/// Inner classical turning point V(r) = E on (0, r_e); 0 when V(0) ≤ E.
pub fn inner_turning_point(params: &MoleculeParams, e: f64) -> Result<f64, SpectrumError> {
    let lo_bound = crate::model::classify_regime(params).domain_lo;
    let v = |r: f64| potential_th(params, r).map(|v| v - e);
    let start = if lo_bound > 0.0 {
        lo_bound + 1e-9 * (params.r_e - lo_bound)
    } else {
        0.0
    };
    let f_lo = v(start)?;
    if f_lo <= 0.0 {
        return Ok(start);
    }
    let f_hi = v(params.r_e)?;
    let root = brent(v, start, params.r_e, f_lo, f_hi, 1e-14, 200)?;
    Ok(root.x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_argument() {
        let h2 = MoleculeParams::new("H2", 30_000.0, 0.741, 1.61890, 0.15, 0.5).unwrap();
        let (sp, _) = require_case(&h2, Case::III, "t").unwrap();
        let z = z_at_origin(Case::III, &sp);
        assert!((z - 0.15 * (1.61890f64 * 0.741).exp()).abs() < 1e-15);
        assert!((z - 0.4978).abs() < 1e-4);

        let h2n = h2.with_ch(-0.3).unwrap();
        let (sp, _) = require_case(&h2n, Case::IV, "t").unwrap();
        assert!((z_at_origin(Case::IV, &sp) - 0.3 / (0.301_313_237 + 0.3)).abs() < 1e-8);
    }

    #[test]
    fn stable_parameters_match_direct_form() {
        let p = MoleculeParams::new("x", 20_000.0, 1.0, 2.0, 0.05, 1.0).unwrap();
        let (sp, _) = require_case(&p, Case::III, "t").unwrap();
        let eps = 5000.0 / sp.conv;
        let x = exponents_eps(&sp, eps);
        let (a, b, c) = gauss_params(Case::III, &sp, eps);
        assert!((a - (x.lambda + x.delta_plus - x.gamma)).abs() < 1e-9);
        assert!((b - (x.lambda + x.delta_plus + x.gamma)).abs() < 1e-9);
        assert_eq!(c, 2.0 * x.lambda + 1.0);

        let q = p.with_ch(-0.4).unwrap();
        let (sp, _) = require_case(&q, Case::IV, "t").unwrap();
        let x = exponents_eps(&sp, eps);
        let (a, b, _) = gauss_params(Case::IV, &sp, eps);
        let want_a = 1.0 + x.lambda + x.gamma_bar_plus - x.delta_bar_plus;
        assert!((a - want_a).abs() < 1e-9);
        assert!((b - (x.lambda + x.gamma_bar_plus + x.delta_bar_plus)).abs() < 1e-9);
    }

    #[test]
    fn compress_is_odd_and_monotone() {
        let mk = |m: f64, l: f64| ScaledSeries {
            mantissa: m,
            ln_scale: l,
            err: 0.0,
            terms_used: 1,
            escalated: false,
        };
        assert_eq!(compress(&mk(0.0, 0.0)), 0.0);
        assert!((compress(&mk(1e-9, 0.0)) - 1e-9).abs() < 1e-18);
        assert!((compress(&mk(-2.0, 0.0)) + 3.0f64.ln()).abs() < 1e-15);
        assert!(compress(&mk(1.0, 800.0)) > compress(&mk(1.0, 700.0)));
    }
}
