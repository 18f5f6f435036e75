//! Physical constants (CODATA 2018, exact SI definitions where available).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Planck constant, J·s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Speed of light, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Atomic mass constant, kg.
pub const AMU: f64 = 1.660_539_066_60e-27;

/// ħ²/(2·1 amu) expressed in cm⁻¹·Å².
///
/// ħ²/(2 amu) in J·m², divided by hc·(100 cm⁻¹/m⁻¹) to get cm⁻¹·m², times
/// 1e20 Å²/m². Evaluated once in 40-digit arithmetic from the constants
/// above: 16.857629170982189990063…
pub const CONV_AMU: f64 = 16.857_629_170_982_190;

/// ħ²/(2μ) in cm⁻¹·Å² for a reduced mass `mu` in amu.
pub fn conv(mu: f64) -> f64 {
    CONV_AMU / mu
}
