//! Static satellite/UE geometry on a spherical Earth.

use crate::error::{domain, Result};

/// Mean Earth radius in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Speed of light in km/s.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;

/// Fixed orbit altitude and elevation seen from the UE.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitGeometry {
    pub altitude_km: f64,
    pub elevation_deg: f64,
    pub earth_radius_km: f64,
}

impl OrbitGeometry {
    pub fn new(altitude_km: f64, elevation_deg: f64) -> Result<Self> {
        let geom = Self {
            altitude_km,
            elevation_deg,
            earth_radius_km: EARTH_RADIUS_KM,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.altitude_km > 0.0 && self.altitude_km.is_finite()) {
            return Err(domain("altitude_km must be > 0", self.altitude_km));
        }
        if !(self.elevation_deg > 0.0 && self.elevation_deg <= 90.0) {
            return Err(domain("elevation_deg must be in (0, 90]", self.elevation_deg));
        }
        if !(self.earth_radius_km > 0.0 && self.earth_radius_km.is_finite()) {
            return Err(domain("earth_radius_km must be > 0", self.earth_radius_km));
        }
        Ok(())
    }

    pub fn slant_range_km(&self) -> Result<f64> {
        slant_range(self)
    }
}

/// Line-of-sight distance between UE and satellite, in km.
///
/// Law of cosines on the Earth-centre / UE / satellite triangle:
/// `d = sqrt(Re² sin²ε + h² + 2 Re h) − Re sin ε`.
pub fn slant_range(geom: &OrbitGeometry) -> Result<f64> {
    geom.validate()?;
    if geom.elevation_deg == 90.0 {
        return Ok(geom.altitude_km);
    }
    let re = geom.earth_radius_km;
    let h = geom.altitude_km;
    let s = geom.elevation_deg.to_radians().sin();
    let rs = re * s;
    // The subtraction cancels badly at high elevation; use the conjugate
    // form d = (h² + 2 Re h) / (sqrt(...) + Re sin ε) instead.
    let num = h * h + 2.0 * re * h;
    Ok(num / ((rs * rs + num).sqrt() + rs))
}

/// One-way free-space propagation delay in seconds.
pub fn propagation_delay(distance_km: f64) -> Result<f64> {
    if !(distance_km >= 0.0 && distance_km.is_finite()) {
        return Err(domain("distance_km must be >= 0", distance_km));
    }
    Ok(distance_km / SPEED_OF_LIGHT_KM_S)
}

/// Area of a circular beam footprint, in km².
pub fn footprint_area(beam_diameter_km: f64) -> Result<f64> {
    if !(beam_diameter_km > 0.0 && beam_diameter_km.is_finite()) {
        return Err(domain("beam_diameter_km must be > 0", beam_diameter_km));
    }
    let r = beam_diameter_km / 2.0;
    Ok(std::f64::consts::PI * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: Earth central angle first, then the chord between
    /// UE and satellite.
    fn central_angle_oracle(h: f64, elev_deg: f64) -> f64 {
        let re = EARTH_RADIUS_KM;
        let e = elev_deg.to_radians();
        let nadir = (re * e.cos() / (re + h)).asin();
        let lambda = std::f64::consts::FRAC_PI_2 - e - nadir;
        (re * re + (re + h) * (re + h) - 2.0 * re * (re + h) * lambda.cos()).sqrt()
    }

    fn d(h: f64, e: f64) -> f64 {
        slant_range(&OrbitGeometry::new(h, e).unwrap()).unwrap()
    }

    #[test]
    fn zenith_is_altitude() {
        assert_eq!(d(600.0, 90.0), 600.0);
        assert_eq!(d(35786.0, 90.0), 35786.0);
    }

    #[test]
    fn leo_and_geo_slant_ranges() {
        assert!((central_angle_oracle(600.0, 30.0) - 1075.1).abs() < 0.5);
        assert!((central_angle_oracle(35786.0, 12.5) - 40316.0).abs() < 50.0);
        assert!((d(600.0, 30.0) - 1075.1).abs() < 0.5);
        assert!((d(35786.0, 12.5) - 40316.0).abs() < 50.0);
    }

    #[test]
    fn agrees_with_central_angle_route() {
        for h in [300.0, 600.0, 1200.0, 8000.0, 35786.0] {
            for e in [1.0, 5.0, 12.5, 30.0, 45.0, 70.0, 89.0] {
                let a = d(h, e);
                let b = central_angle_oracle(h, e);
                assert!(((a - b) / b).abs() < 1e-9, "h={h} e={e}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rejects_bad_elevation() {
        assert!(OrbitGeometry::new(600.0, 0.0).is_err());
        assert!(OrbitGeometry::new(600.0, 95.0).is_err());
        assert!(OrbitGeometry::new(600.0, -10.0).is_err());
        assert!(OrbitGeometry::new(0.0, 30.0).is_err());
        let bad = OrbitGeometry {
            altitude_km: 600.0,
            elevation_deg: 91.0,
            earth_radius_km: EARTH_RADIUS_KM,
        };
        assert!(slant_range(&bad).is_err());
    }

    #[test]
    fn delays() {
        assert_eq!(propagation_delay(SPEED_OF_LIGHT_KM_S).unwrap(), 1.0);
        assert!((propagation_delay(1075.1).unwrap() - 3.586e-3).abs() < 1e-6);
        assert!((propagation_delay(40316.0).unwrap() - 134.47e-3).abs() < 1e-5);
        assert_eq!(propagation_delay(0.0).unwrap(), 0.0);
        assert!(propagation_delay(-1.0).is_err());
    }

    #[test]
    fn footprints() {
        assert!((footprint_area(2.0).unwrap() - std::f64::consts::PI).abs() < 1e-12);
        assert!((footprint_area(47.6).unwrap() - 1780.0).abs() < 2.0);
        assert!((footprint_area(653.0).unwrap() - 334_900.0).abs() < 100.0);
        assert!(footprint_area(0.0).is_err());
        assert!(footprint_area(-3.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn decreasing_in_elevation(h in 100.0f64..40000.0, e1 in 0.5f64..89.0, de in 0.01f64..1.0) {
                prop_assert!(d(h, e1) > d(h, e1 + de));
            }

            #[test]
            fn increasing_in_altitude(h in 100.0f64..40000.0, dh in 0.1f64..500.0, e in 0.5f64..90.0) {
                prop_assert!(d(h + dh, e) > d(h, e));
            }

            #[test]
            fn never_below_altitude(h in 100.0f64..40000.0, e in 0.5f64..90.0) {
                prop_assert!(d(h, e) >= h);
            }

            #[test]
            fn delay_is_linear(a in 0.0f64..1e5, b in 0.0f64..1e5) {
                let lhs = propagation_delay(a + b).unwrap();
                let rhs = propagation_delay(a).unwrap() + propagation_delay(b).unwrap();
                prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300));
            }
        }
    }
}
