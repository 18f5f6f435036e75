mod common;

use common::{case_i, case_iii, morse, rel};
use tietz_hua::constants::conv;
use tietz_hua::oracle::{molecule_grid, numerov_eigen_refined, th_potential, GridSpec, DEFAULT_POINTS};
use tietz_hua::MoleculeParams;

fn levels(p: &MoleculeParams, grid: GridSpec) -> Vec<f64> {
    numerov_eigen_refined(th_potential(p), grid, conv(p.mu), p.d, usize::MAX, 2)
        .unwrap()
        .iter()
        .map(|l| l.e)
        .collect()
}

#[test]
fn extending_the_outer_wall_changes_nothing() {
    for p in [morse(), case_iii()[1].clone(), case_i()[1].clone()] {
        let base = molecule_grid(&p, DEFAULT_POINTS).unwrap();
        let span = base.r_hi - base.r_lo;
        // same step on the wider box
        let wide = GridSpec::new(base.r_lo, base.r_lo + 1.5 * span, DEFAULT_POINTS * 3 / 2).unwrap();
        let (a, b) = (levels(&p, base), levels(&p, wide));
        assert_eq!(a.len(), b.len(), "{}", p.name);
        for (n, (x, y)) in a.iter().zip(&b).enumerate() {
            assert!(rel(*y, *x) < 1e-9, "{} n={n}: {x} vs {y}", p.name);
        }
    }
}

#[test]
fn levels_are_grid_converged_with_sequential_nodes() {
    let p = &case_iii()[0];
    let grid = molecule_grid(p, DEFAULT_POINTS).unwrap();
    let lv = numerov_eigen_refined(th_potential(p), grid, conv(p.mu), p.d, usize::MAX, 2).unwrap();
    for (k, l) in lv.iter().enumerate() {
        assert_eq!(l.nodes, k);
        assert!(l.grid_change < 1e-7, "n={k}: {}", l.grid_change);
    }
}
