//! Synthetic molecules shared by the integration tests. Every spectrum
//! here is checked against the Numerov oracle somewhere in the suite.
#![allow(dead_code)]

use tietz_hua::MoleculeParams;

fn mol(name: &str, d: f64, r_e: f64, b_h: f64, c_h: f64) -> MoleculeParams {
    MoleculeParams::new(name, d, r_e, b_h, c_h, 1.0).unwrap()
}

/// Case I wells with 3, 10 and 21 levels.
pub fn case_i() -> Vec<MoleculeParams> {
    vec![
        mol("I-shallow", 1_000.0, 1.0, 2.0, 0.3),
        mol("I-medium", 10_000.0, 1.0, 2.0, 0.3),
        mol("I-deep", 40_000.0, 1.0, 2.0, 0.3),
    ]
}

pub fn case_iii() -> Vec<MoleculeParams> {
    vec![
        mol("III-deep", 20_000.0, 1.0, 2.0, 0.05),
        mol("III-moderate", 5_000.0, 0.7, 1.0, 0.2),
    ]
}

pub fn case_iv() -> Vec<MoleculeParams> {
    vec![
        mol("IV-deep", 20_000.0, 1.0, 2.0, -0.4),
        mol("IV-moderate", 5_000.0, 0.7, 1.0, -0.2),
    ]
}

pub fn morse() -> MoleculeParams {
    mol("V", 40_000.0, 1.0, 2.0, 0.0)
}

/// Base shape for the Morse-limit and boundary checks.
pub fn limit_base(c_h: f64) -> MoleculeParams {
    mol("limit", 20_000.0, 1.0, 2.0, c_h)
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}
