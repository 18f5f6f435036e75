mod common;

use common::{case_i, case_iii, case_iv, limit_base, morse, rel};
use tietz_hua::model::scale;
use tietz_hua::oracle::quad_norm;
use tietz_hua::roots::brent;
use tietz_hua::spectrum::{
    exponents_at, solve, wavefunction, wavefunction_case_i, wavefunction_log, NormalizedState,
    SolveOptions, SpectrumError,
};
use tietz_hua::{Case, MoleculeParams};

fn spectrum(p: &MoleculeParams) -> tietz_hua::SpectrumReport {
    solve(p, &SolveOptions::default()).unwrap()
}

#[test]
fn scanning_the_quantization_condition_recovers_closed_form() {
    let p = &case_i()[2];
    let sp = scale(p).unwrap();
    let report = spectrum(p);
    for s in &report.states {
        let n = s.n_r as f64;
        let f = |e: f64| -> Result<f64, SpectrumError> {
            let x = exponents_at(&sp, e)?;
            Ok(x.gamma - x.lambda - x.delta_plus - n)
        };
        // γ − λ grows with E, so the scan finds one sign change per level
        let grid: Vec<f64> = (0..=4000).map(|i| p.d * (1e-9 + (1.0 - 2e-9) * i as f64 / 4000.0)).collect();
        let (a, b) = grid
            .windows(2)
            .map(|w| (w[0], w[1]))
            .find(|&(a, b)| f(a).unwrap() * f(b).unwrap() <= 0.0)
            .expect("bracket");
        let root = brent(f, a, b, f(a).unwrap(), f(b).unwrap(), 1e-14, 200).unwrap();
        assert!(rel(root.x, s.e) < 1e-10, "n={}: {} vs {}", s.n_r, root.x, s.e);
    }
}

#[test]
fn morse_limit_converges_monotonically() {
    let ladder = spectrum(&limit_base(0.0)).energies();
    for sign in [1.0, -1.0] {
        let devs: Vec<f64> = [1e-3, 1e-4, 1e-5]
            .iter()
            .map(|&c| {
                let e = spectrum(&limit_base(sign * c)).energies();
                assert_eq!(e.len(), ladder.len(), "c_h = {}", sign * c);
                e.iter().zip(&ladder).map(|(a, b)| rel(*a, *b)).fold(0.0, f64::max)
            })
            .collect();
        assert!(devs[0] > devs[1] && devs[1] > devs[2], "sign {sign}: {devs:?}");
    }
}

#[test]
fn morse_wavefunctions_are_the_small_ch_limit() {
    let m = limit_base(0.0);
    let t = limit_base(1e-6);
    let (sm, st) = (spectrum(&m), spectrum(&t));
    assert_eq!(st.regime.case, Case::III);
    for n in [0, 1, 4, 9] {
        let grid: Vec<f64> = (0..400).map(|i| 0.6 + 2.4 * i as f64 / 399.0).collect();
        let peak_normalized = |p: &MoleculeParams, s| -> Vec<f64> {
            let v: Vec<(f64, f64)> = grid.iter().map(|&r| wavefunction_log(p, s, r).unwrap()).collect();
            let (ps, pl) = v.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
            v.iter().map(|&(s, l)| s * ps * (l - pl).exp()).collect()
        };
        let a = peak_normalized(&m, &sm.states[n]);
        let b = peak_normalized(&t, &st.states[n]);
        let dev = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(dev <= 1e-3, "n={n}: {dev}");
    }
}

#[test]
fn normalized_states_have_unit_norm() {
    let mut mols = case_iii();
    mols.extend(case_iv());
    mols.push(morse());
    mols.push(case_i()[1].clone());
    for p in &mols {
        let report = spectrum(p);
        for s in report.states.iter().take(3) {
            let wf = NormalizedState::new(p, s).unwrap();
            let lo = wf.support_lo.max(report.regime.domain_lo);
            let norm = quad_norm(|r| wf.value(r).unwrap(), lo, p.r_e + 60.0 / p.b_h).unwrap();
            assert!((norm - 1.0).abs() < 1e-6, "{} n={}: {norm}", p.name, s.n_r);
            if report.regime.case == Case::I {
                let r = p.r_e + 0.1;
                assert_eq!(wf.value(r).unwrap(), wavefunction_case_i(p, s.n_r, r).unwrap());
            }
        }
    }
}

#[test]
fn moderate_wells_vanish_at_the_origin() {
    // deep wells are excluded: there R(0) is a ₂F₁ cancellation residual
    // far below the resolution of double precision
    for p in [&case_iii()[1], &case_iv()[1]] {
        for s in &spectrum(p).states {
            let peak = (1..2000)
                .map(|i| wavefunction(p, s, 6.0 * i as f64 / 2000.0).unwrap().abs())
                .fold(0.0, f64::max);
            let r0 = wavefunction(p, s, 0.0).unwrap().abs();
            assert!(r0 <= 1e-6 * peak, "{} n={}: {r0} vs {peak}", p.name, s.n_r);
        }
    }
}

#[test]
fn marginal_flags_only_near_dissociation() {
    for p in case_iii().iter().chain(case_iv().iter()) {
        for s in &spectrum(p).states {
            assert_eq!(s.marginal, s.e > p.d * (1.0 - 1e-8));
        }
    }
}
