use super::OracleError;

pub const QUAD_ABS_TOL: f64 = 1e-10;
const MAX_INTERVALS: usize = 5_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Segment, OracleError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v * v)
        } else {
            Err(OracleError::Integrand(x))
        }
    };
    let fc = eval(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = eval(c - dx)? + eval(c + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok(Segment {
        a,
        b,
        value: k * h,
        error: ((k - g) * h).abs(),
    })
}

/// ∫ₐᵇ f(r)² dr by globally adaptive 7/15-point Gauss–Kronrod quadrature to
/// an absolute tolerance of 1e-10.
pub fn quad_norm<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64, OracleError> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(OracleError::Grid(format!("bad interval [{a}, {b}]")));
    }
    // start from a few panels so narrow features are not missed entirely
    let mut segs = Vec::new();
    let start = 16;
    for i in 0..start {
        let x0 = a + (b - a) * i as f64 / start as f64;
        let x1 = a + (b - a) * (i + 1) as f64 / start as f64;
        segs.push(kronrod(&f, x0, x1)?);
    }
    loop {
        let total: f64 = segs.iter().map(|s| s.value).sum();
        let err: f64 = segs.iter().map(|s| s.error).sum();
        if err <= QUAD_ABS_TOL {
            return Ok(total);
        }
        if segs.len() >= MAX_INTERVALS {
            return Err(OracleError::Quadrature {
                estimate: total,
                error: err,
                tol: QUAD_ABS_TOL,
                intervals: segs.len(),
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("non-empty");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        segs.push(kronrod(&f, s.a, mid)?);
        segs.push(kronrod(&f, mid, s.b)?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_and_sine() {
        assert!((quad_norm(|_| 1.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-12);
        let s = quad_norm(|r: f64| (PI * r).sin(), 0.0, 1.0).unwrap();
        assert!((s - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sharp_gaussian() {
        // ∫ exp(−2·(r−3)²/σ²) = σ√(π/2)
        let sigma = 0.05;
        let f = |r: f64| (-(r - 3.0) * (r - 3.0) / (sigma * sigma)).exp();
        let got = quad_norm(f, 0.0, 10.0).unwrap();
        let want = sigma * (PI / 2.0).sqrt();
        assert!((got - want).abs() < 1e-10);
    }

    #[test]
    fn errors() {
        assert!(quad_norm(|_| 1.0, 1.0, 0.0).is_err());
        assert!(matches!(
            quad_norm(|r: f64| if r > 0.5 { f64::INFINITY } else { 1.0 }, 0.0, 1.0),
            Err(OracleError::Integrand(_))
        ));
    }
}
