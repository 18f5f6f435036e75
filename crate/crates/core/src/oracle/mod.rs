//! Independent checks: a Numerov shooting eigensolver for
//! −(ħ²/2μ) u'' + V u = E u with hard walls, adaptive quadrature and node
//! counting. Nothing here depends on the `spectrum` solvers.

mod numerov;
mod quad;

use thiserror::Error;

use crate::constants;
use crate::model::{classify_regime, potential_th, Case, MoleculeParams};

pub use numerov::{
    count_states_below, numerov_eigen, numerov_eigen_refined, Eigen, GridSpec, NodeCounter,
    DEFAULT_POINTS,
};
pub use quad::{quad_norm, QUAD_ABS_TOL};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OracleError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("potential is not finite at r = {r} Å ({value})")]
    Potential { r: f64, value: f64 },
    #[error("bisection lost its bracket for state {state}: count({lo}) = {count_lo}, count({hi}) = {count_hi}")]
    Bracket {
        state: usize,
        lo: f64,
        hi: f64,
        count_lo: usize,
        count_hi: usize,
    },
    #[error("quadrature did not reach tolerance {tol} after {intervals} subintervals (estimate {estimate}, error {error})")]
    Quadrature {
        estimate: f64,
        error: f64,
        tol: f64,
        intervals: usize,
    },
    #[error("integrand is not finite at r = {0}")]
    Integrand(f64),
}

/// Default grid for a molecule: hard wall just outside r₀ in case I,
/// at 1e-6 Å otherwise; outer wall at r_e + 40/b_h.
pub fn molecule_grid(params: &MoleculeParams, n_points: usize) -> Result<GridSpec, OracleError> {
    let regime = classify_regime(params);
    let r_lo = match (regime.case, regime.r0) {
        (Case::I, Some(r0)) => r0.max(0.0) * (1.0 + 1e-9) + 1e-9,
        _ => 1e-6,
    };
    GridSpec::new(r_lo, params.r_e + 40.0 / params.b_h, n_points)
}

/// Tietz-Hua potential as an oracle input (NaN where it is undefined).
pub fn th_potential(params: &MoleculeParams) -> impl Fn(f64) -> f64 + '_ {
    move |r| potential_th(params, r).unwrap_or(f64::NAN)
}

/// Numerov levels below D for a molecule on its default grid with two
/// refinement passes.
pub fn molecule_levels(params: &MoleculeParams, n_points: usize) -> Result<Vec<Eigen>, OracleError> {
    let grid = molecule_grid(params, n_points)?;
    numerov_eigen_refined(
        th_potential(params),
        grid,
        constants::conv(params.mu),
        params.d,
        usize::MAX,
        2,
    )
}

/// Number of strict sign changes in `values`. Zeros are skipped, so a zero
/// at either end (or a zero between two equal signs) is not a node.
pub fn count_nodes(values: &[f64]) -> usize {
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &v in values {
        if v == 0.0 || v.is_nan() {
            continue;
        }
        let s = v.signum();
        if last != 0.0 && s != last {
            nodes += 1;
        }
        last = s;
    }
    nodes
}
