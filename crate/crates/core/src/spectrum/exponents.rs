use crate::model::ScaledParams;

use super::SpectrumError;

/// Exponents of the hypergeometric solutions at one energy.
///
/// In the Morse limit c_h = 0 the c_h-dependent fields are +∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    /// √(d̃ − ε)/b_h.
    pub lambda: f64,
    /// 1/2 + √(1/4 + (d̃/b_h²)(1 − 1/c_h)²); the δ of the closed-form case.
    pub delta_plus: f64,
    pub delta_minus: f64,
    /// √(d̃/c_h² − ε)/b_h.
    pub gamma: f64,
    /// 1/2 + √(1/4 + (d̃/b_h²)(1 + 1/|c_h|)²).
    pub delta_bar_plus: f64,
    pub gamma_bar_plus: f64,
}

pub(crate) fn delta_root(sp: &ScaledParams, shift: f64) -> f64 {
    let q = shift / sp.ch;
    (0.25 + sp.d_tilde * q * q / (sp.bh * sp.bh)).sqrt()
}

/// Exponents at a scaled energy ε without range checks.
pub(crate) fn exponents_eps(sp: &ScaledParams, eps: f64) -> Exponents {
    let b = sp.bh;
    let lambda = (sp.d_tilde - eps).max(0.0).sqrt() / b;
    // (1 − 1/c) = (c − 1)/c, kept in that form for small |c|
    let delta_plus = 0.5 + delta_root(sp, sp.ch - 1.0);
    let gamma = (sp.d_tilde / (sp.ch * sp.ch) - eps).sqrt() / b;
    let delta_bar_plus = 0.5 + delta_root(sp, sp.ch.abs() + 1.0);
    Exponents {
        lambda,
        delta_plus,
        delta_minus: 1.0 - delta_plus,
        gamma,
        delta_bar_plus,
        gamma_bar_plus: gamma,
    }
}

/// Exponents at an energy E (cm⁻¹), 0 ≤ E < D.
pub fn exponents_at(sp: &ScaledParams, e: f64) -> Result<Exponents, SpectrumError> {
    let d = sp.d_tilde * sp.conv;
    if !(e >= 0.0 && e < d) {
        return Err(SpectrumError::Energy { e, d });
    }
    Ok(exponents_eps(sp, e / sp.conv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{scale, MoleculeParams};

    fn sp(ch: f64) -> ScaledParams {
        scale(&MoleculeParams::new("x", 49_382.0, 0.917, 1.94207, ch, 0.957).unwrap()).unwrap()
    }

    #[test]
    fn ground_values() {
        let s = sp(0.17);
        let x = exponents_at(&s, 0.0).unwrap();
        assert!((x.lambda - s.d_tilde.sqrt() / s.bh).abs() < 1e-13 * x.lambda);
        let g = s.d_tilde.sqrt() / (s.bh * 0.17);
        assert!((x.gamma - g).abs() < 1e-13 * g);
        assert_eq!(x.delta_minus, 1.0 - x.delta_plus);
        assert_eq!(x.gamma_bar_plus, x.gamma);
    }

    #[test]
    fn delta_tends_to_one_as_ch_tends_to_one() {
        let a = exponents_at(&sp(0.999), 0.0).unwrap().delta_plus;
        let b = exponents_at(&sp(0.999_999), 0.0).unwrap().delta_plus;
        assert!(b > 1.0 && b < a);
        assert!(b - 1.0 < 1e-6);
    }

    #[test]
    fn half_depth_values() {
        // scripted reference (mpmath, 30 digits) for D = 49382, μ = 0.957,
        // b_h = 1.94207, r_e = 0.917, c_h = 0.17, E = D/2
        let s = sp(0.17);
        let x = exponents_at(&s, 49_382.0 / 2.0).unwrap();
        let want = [
            (x.lambda, 19.278_009_102_171_367),
            (x.delta_plus, 133.609_610_844_354_96),
            (x.gamma, 159.208_990_486_709_72),
            (x.delta_bar_plus, 188.135_781_806_454_09),
        ];
        for (got, w) in want {
            assert!(((got - w) / w).abs() < 1e-12, "{got} vs {w}");
        }
        assert!(x.lambda < x.gamma);
    }

    #[test]
    fn rejects_unbound_energy() {
        let s = sp(0.17);
        assert!(exponents_at(&s, 49_382.0).is_err());
        assert!(exponents_at(&s, -1.0).is_err());
    }
}
