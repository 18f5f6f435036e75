//! Log-gamma for positive arguments and a signed variant for the
//! reflection-based connection formulas.

use std::f64::consts::PI;

use super::SpecFunError;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// zeta(k) - 1 for k = 2..=40.
const ZETA_MINUS_ONE: [f64; 39] = [
    0.644_934_066_848_226_4,
    0.202_056_903_159_594_3,
    0.082_323_233_711_138_19,
    0.036_927_755_143_369_93,
    0.017_343_061_984_449_14,
    0.008_349_277_381_922_827,
    0.004_077_356_197_944_339,
    0.002_008_392_826_082_214,
    9.945_751_278_180_853e-4,
    4.941_886_041_194_646e-4,
    2.460_865_533_080_483e-4,
    1.227_133_475_784_891_5e-4,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187_2e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_84e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_961e-7,
    4.769_329_867_878_065e-7,
    2.384_505_027_277_33e-7,
    1.192_199_259_653_110_7e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
    1.490_155_482_836_504_1e-8,
    7.450_711_789_835_429e-9,
    3.725_334_024_788_457e-9,
    1.862_659_723_513_049e-9,
    9.313_274_324_196_682e-10,
    4.656_629_065_033_784e-10,
    2.328_311_833_676_505_5e-10,
    1.164_155_017_270_052e-10,
    5.820_772_087_902_701e-11,
    2.910_385_044_497_099_7e-11,
    1.455_192_189_104_198_4e-11,
    7.275_959_835_057_481e-12,
    3.637_979_547_378_651e-12,
    1.818_989_650_307_066e-12,
    9.094_947_840_263_889e-13,
];

/// Stirling tail coefficients B_{2k} / (2k (2k-1)), k = 1..=8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// ln Γ(2 + e) for |e| <= 0.5, from the Taylor expansion about 2.
fn ln_gamma_near_two(e: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = -e;
    for (i, zm1) in ZETA_MINUS_ONE.iter().enumerate() {
        let k = (i + 2) as f64;
        pow *= -e;
        acc += zm1 * pow / k;
        if pow.abs() < 1e-18 * acc.abs().max(1e-300) {
            break;
        }
    }
    (1.0 - EULER_GAMMA) * e + acc
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut tail = 0.0;
    let mut p = inv;
    for c in STIRLING {
        tail += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + tail
}

fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        ln_gamma_near_two(x) - x.ln() - x.ln_1p()
    } else if x < 1.5 {
        ln_gamma_near_two(x - 1.0) - (x - 1.0).ln_1p()
    } else if x <= 2.5 {
        ln_gamma_near_two(x - 2.0)
    } else if x < 12.0 {
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        ln_gamma_near_two(y - 2.0) + prod.ln()
    } else {
        ln_gamma_stirling(x)
    }
}

/// Natural logarithm of Γ(x) for finite `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecFunError::Domain(format!(
            "ln_gamma requires finite x > 0, got {x}"
        )));
    }
    Ok(ln_gamma_pos(x))
}

/// sin(πx) with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// True when `x` is a pole of Γ (zero or a negative integer).
pub(crate) fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln|Γ(x)|, sign Γ(x))` for any finite non-pole `x`.
///
/// Returns `(-inf, 0.0)` at the poles, which is the convention the
/// connection formulas want for 1/Γ.
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma_pos(x), 1.0);
    }
    if is_gamma_pole(x) {
        return (f64::INFINITY, 0.0);
    }
    // Γ(x) Γ(1-x) = π / sin(πx), with Γ(1-x) > 0 here.
    let s = sin_pi(x);
    (PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x), s.signum())
}

/// `(ln|1/Γ(x)|, sign)`, with sign 0 at the poles.
pub(crate) fn ln_rgamma_signed(x: f64) -> (f64, f64) {
    let (l, s) = ln_gamma_signed(x);
    if s == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (-l, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn trivial_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        let half = ln_gamma(0.5).unwrap();
        assert!(rel(half, PI.sqrt().ln()) < 1e-15);
    }

    #[test]
    fn frozen_reference_values() {
        // mpmath.loggamma at 40 digits
        let cases = [
            (1e-8, 18.420_680_738_180_209),
            (0.1, 2.252_712_651_734_206),
            (0.9, 0.066_376_239_734_742_971),
            (1.000_001, -5.772_148_423_874_146_7e-7),
            (1.7, -0.095_807_697_407_065_865),
            (2.000_001, 4.227_846_576_245_292_4e-7),
            (3.3, 0.987_098_577_894_734_59),
            (11.9, 17.258_477_450_595_521),
            (12.0, 17.502_307_845_873_886),
            (57.332_314_8, 173.694_414_695_799_77),
            (671.3, 3_696.001_243_308_150_3),
            (1e4, 82_099.717_496_442_377),
        ];
        for (x, want) in cases {
            let got = ln_gamma(x).unwrap();
            assert!(rel(got, want) < 1e-13, "x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn recurrence_holds() {
        for i in 1..400 {
            let x = 0.037 * i as f64 + 0.01;
            let lhs = ln_gamma(x + 1.0).unwrap();
            let rhs = ln_gamma(x).unwrap() + x.ln();
            assert!((lhs - rhs).abs() <= 2e-14 * lhs.abs().max(1.0), "x={x}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
    }

    #[test]
    fn signed_reflection() {
        // Γ(-0.5) = -2√π
        let (l, s) = ln_gamma_signed(-0.5);
        assert_eq!(s, -1.0);
        assert!(rel(l, (2.0 * PI.sqrt()).ln()) < 1e-14);
        // Γ(-1.5) = 4√π/3
        let (l, s) = ln_gamma_signed(-1.5);
        assert_eq!(s, 1.0);
        assert!(rel(l, (4.0 * PI.sqrt() / 3.0).ln()) < 1e-14);
        assert_eq!(ln_rgamma_signed(-3.0).1, 0.0);
        assert_eq!(ln_rgamma_signed(0.0).1, 0.0);
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for k in -50..50 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        let x = -16.0 + 1e-12;
        let r = x + 16.0;
        assert!((sin_pi(x) - (PI * r).sin()).abs() < 1e-26);
    }
}
