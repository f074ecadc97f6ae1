//! Antenna models: circular-aperture radiation pattern, Bessel J1, and
//! aperture-size gain estimates.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::geometry::SPEED_OF_LIGHT_KM_S;

const SPEED_OF_LIGHT_M_S: f64 = SPEED_OF_LIGHT_KM_S * 1000.0;

/// Below this |x| J1 is summed from its power series, above it from the
/// Hankel asymptotic expansion.
const J1_SERIES_LIMIT: f64 = 12.0;

// ============================================================================
// Bessel J1
// ============================================================================

/// Bessel function of the first kind, order one.
pub fn bessel_j1(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("bessel_j1 argument must be finite", x));
    }
    let ax = x.abs();
    let v = if ax < J1_SERIES_LIMIT {
        j1_series(ax)
    } else {
        j1_asymptotic(ax)
    };
    Ok(if x < 0.0 { -v } else { v })
}

fn j1_series(x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= -q / (m * (m + 1.0));
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) || m > 200.0 {
            break;
        }
    }
    sum
}

fn j1_asymptotic(x: f64) -> f64 {
    // a_k = prod_{j=1..k} (4 - (2j-1)^2) / (k! 8^k); truncated at the
    // smallest term, where the remainder is bounded by that term.
    let mut p = 1.0;
    let mut q = 0.0;
    let mut coef = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        coef *= (4.0 - odd * odd) / (k as f64 * 8.0 * x);
        if coef.abs() >= last {
            break;
        }
        last = coef.abs();
        // Signs alternate in pairs: Q gets +a1, -a3, +a5...; P gets -a2, +a4...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 1 {
            q += sign * coef;
        } else {
            p += sign * coef;
        }
    }
    let chi = x - 0.75 * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

// ============================================================================
// Circular aperture pattern
// ============================================================================

/// Circular aperture of a given radius at a given carrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularAperture {
    pub radius_m: f64,
    pub carrier_freq_hz: f64,
}

impl CircularAperture {
    pub fn new(radius_m: f64, carrier_freq_hz: f64) -> Result<Self> {
        if !(radius_m > 0.0 && radius_m.is_finite()) {
            return Err(domain("aperture radius must be > 0", radius_m));
        }
        if !(carrier_freq_hz > 0.0 && carrier_freq_hz.is_finite()) {
            return Err(domain("carrier frequency must be > 0", carrier_freq_hz));
        }
        Ok(Self {
            radius_m,
            carrier_freq_hz,
        })
    }

    /// Wave number times radius, `2π a f / c`.
    pub fn kappa_a(&self) -> f64 {
        2.0 * PI * self.radius_m * self.carrier_freq_hz / SPEED_OF_LIGHT_M_S
    }

    pub fn gain_rel(&self, theta_deg: f64) -> Result<f64> {
        aperture_gain_rel(theta_deg, self.kappa_a())
    }
}

/// Normalized far-field amplitude `2 J1(u) / u` with `u = κa sin θ`.
///
/// Signed, so pattern nulls show up as sign changes. Equals 1 on boresight.
pub fn aperture_field_rel(theta_deg: f64, kappa_a: f64) -> Result<f64> {
    if !(theta_deg.abs() <= 90.0) {
        return Err(domain("|theta_deg| must be <= 90", theta_deg));
    }
    if !(kappa_a > 0.0 && kappa_a.is_finite()) {
        return Err(domain("kappa_a must be > 0", kappa_a));
    }
    if theta_deg == 0.0 {
        return Ok(1.0);
    }
    let u = kappa_a * theta_deg.to_radians().sin();
    if u == 0.0 {
        return Ok(1.0);
    }
    Ok(2.0 * bessel_j1(u)? / u)
}

/// Relative power gain `4 |J1(u)/u|²`, in `[0, 1]`, with `G(0) = 1`.
pub fn aperture_gain_rel(theta_deg: f64, kappa_a: f64) -> Result<f64> {
    let a = aperture_field_rel(theta_deg, kappa_a)?;
    Ok((a * a).min(1.0))
}

/// Boresight gain of a reflector of diameter `D` with aperture efficiency
/// `η`: `G = η (π D f / c)²`, in dBi.
pub fn boresight_gain_dbi(diameter_m: f64, freq_hz: f64, efficiency: f64) -> Result<f64> {
    if !(diameter_m > 0.0 && diameter_m.is_finite()) {
        return Err(domain("diameter_m must be > 0", diameter_m));
    }
    if !(freq_hz > 0.0 && freq_hz.is_finite()) {
        return Err(domain("freq_hz must be > 0", freq_hz));
    }
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(domain("efficiency must be in (0, 1]", efficiency));
    }
    let x = PI * diameter_m * freq_hz / SPEED_OF_LIGHT_M_S;
    Ok(10.0 * (efficiency * x * x).log10())
}

// ============================================================================
// Antenna specs
// ============================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AntennaKind {
    CircularAperture,
    UpaIsotropic,
    Vsat,
}

impl AntennaKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AntennaKind::CircularAperture => "circular_aperture",
            AntennaKind::UpaIsotropic => "upa_isotropic",
            AntennaKind::Vsat => "vsat",
        }
    }
}

impl fmt::Display for AntennaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AntennaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular_aperture" => Ok(AntennaKind::CircularAperture),
            "upa_isotropic" => Ok(AntennaKind::UpaIsotropic),
            "vsat" => Ok(AntennaKind::Vsat),
            other => Err(Error::Config(format!("unknown antenna kind '{other}'"))),
        }
    }
}

pub const DEFAULT_APERTURE_EFFICIENCY: f64 = 0.6;

/// One end of the link. The configured boresight gain is authoritative;
/// `diameter_m` only shapes the off-boresight pattern and feeds the
/// consistency check.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaSpec {
    pub kind: AntennaKind,
    pub boresight_gain_dbi: f64,
    pub diameter_m: Option<f64>,
    pub efficiency: f64,
}

impl AntennaSpec {
    pub fn new(kind: AntennaKind, boresight_gain_dbi: f64) -> Self {
        Self {
            kind,
            boresight_gain_dbi,
            diameter_m: None,
            efficiency: DEFAULT_APERTURE_EFFICIENCY,
        }
    }

    pub fn with_diameter(mut self, diameter_m: f64) -> Self {
        self.diameter_m = Some(diameter_m);
        self
    }

    /// Gain towards `theta_deg` off boresight, in dBi.
    ///
    /// UPA composites radiate uniformly, so they return the boresight value
    /// at any angle. Aperture antennas without a diameter behave the same.
    pub fn gain_dbi(&self, theta_deg: f64, carrier_freq_hz: f64) -> Result<f64> {
        if !(theta_deg.abs() <= 90.0) {
            return Err(domain("|theta_deg| must be <= 90", theta_deg));
        }
        match (self.kind, self.diameter_m) {
            (AntennaKind::UpaIsotropic, _) | (_, None) => Ok(self.boresight_gain_dbi),
            (_, Some(d)) => {
                let ap = CircularAperture::new(d / 2.0, carrier_freq_hz)?;
                Ok(self.boresight_gain_dbi + 10.0 * ap.gain_rel(theta_deg)?.log10())
            }
        }
    }

    /// Aperture-formula estimate of the boresight gain, if a diameter is set.
    pub fn estimated_gain_dbi(&self, carrier_freq_hz: f64) -> Option<Result<f64>> {
        self.diameter_m
            .map(|d| boresight_gain_dbi(d, carrier_freq_hz, self.efficiency))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const J1_ZEROS: [f64; 3] = [3.831_705_970_207_512, 7.015_586_669_815_619, 10.173_468_135_062_722];

    #[test]
    fn j1_values() {
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
        assert!((bessel_j1(1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-12);
        assert!(bessel_j1(3.831_705_970_2).unwrap().abs() < 1e-8);
        for z in J1_ZEROS {
            assert!(bessel_j1(z).unwrap().abs() < 1e-12, "J1({z})");
        }
        // Reference values, Abramowitz & Stegun table 9.1 / 9.2.
        assert!((bessel_j1(15.0).unwrap() - 0.205_104_038_613_522_5).abs() < 1e-10);
        assert!((bessel_j1(50.0).unwrap() + 0.097_511_828_125_175_06).abs() < 1e-10);
    }

    #[test]
    fn j1_is_odd() {
        for x in [0.3, 2.0, 11.9, 12.0, 12.1, 40.0] {
            assert_eq!(bessel_j1(-x).unwrap(), -bessel_j1(x).unwrap());
        }
    }

    #[test]
    fn j1_continuous_across_series_limit() {
        let lo = j1_series(J1_SERIES_LIMIT);
        let hi = j1_asymptotic(J1_SERIES_LIMIT);
        assert!((lo - hi).abs() < 1e-10, "{lo} vs {hi}");
    }

    #[test]
    fn j1_rejects_non_finite() {
        assert!(bessel_j1(f64::NAN).is_err());
        assert!(bessel_j1(f64::INFINITY).is_err());
    }

    #[test]
    fn pattern_boresight_and_bounds() {
        for ka in [1.0, 10.0, 100.0, 1000.0] {
            assert_eq!(aperture_gain_rel(0.0, ka).unwrap(), 1.0);
        }
        for i in 1..=9000 {
            let theta = i as f64 * 0.01;
            let g = aperture_gain_rel(theta, 50.0).unwrap();
            assert!((0.0..=1.0).contains(&g), "theta={theta} g={g}");
        }
        assert!(aperture_gain_rel(90.5, 10.0).is_err());
        assert!(aperture_gain_rel(10.0, 0.0).is_err());
    }

    #[test]
    fn first_null_at_first_j1_zero() {
        let ka = 20.0;
        let theta = (J1_ZEROS[0] / ka).asin().to_degrees();
        assert!(aperture_gain_rel(theta, ka).unwrap() < 1e-8);
    }

    #[test]
    fn gain_estimates() {
        let g = boresight_gain_dbi(2.0, 2e9, 0.6).unwrap();
        assert!((g - 30.2).abs() < 0.1, "{g}");
        let g = boresight_gain_dbi(5.0, 20e9, 0.6).unwrap();
        assert!((g - 58.2).abs() < 0.1, "{g}");
        let unit_d = SPEED_OF_LIGHT_M_S / (PI * 1e9);
        assert!(boresight_gain_dbi(unit_d, 1e9, 1.0).unwrap().abs() < 1e-12);
        assert!(boresight_gain_dbi(0.0, 1e9, 0.6).is_err());
        assert!(boresight_gain_dbi(1.0, 1e9, 1.5).is_err());
    }

    #[test]
    fn kappa_a_counts_wavelengths_on_circumference() {
        let ap = CircularAperture::new(0.25, 20e9).unwrap();
        let wavelength = SPEED_OF_LIGHT_M_S / 20e9;
        let expected = 2.0 * PI * 0.25 / wavelength;
        assert!((ap.kappa_a() - expected).abs() < 1e-9);
    }

    #[test]
    fn spec_gain_patterns() {
        let upa = AntennaSpec::new(AntennaKind::UpaIsotropic, 0.0);
        assert_eq!(upa.gain_dbi(45.0, 2e9).unwrap(), 0.0);
        let dish = AntennaSpec::new(AntennaKind::Vsat, 39.7).with_diameter(0.6);
        assert_eq!(dish.gain_dbi(0.0, 20e9).unwrap(), 39.7);
        assert!(dish.gain_dbi(1.0, 20e9).unwrap() < 39.7);
        assert!("parabolic".parse::<AntennaKind>().is_err());
        assert_eq!("vsat".parse::<AntennaKind>().unwrap(), AntennaKind::Vsat);
    }
}
