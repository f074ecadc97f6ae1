//! Downlink budget: free-space loss, receiver noise, G/T and SNR.
//!
//! Everything stays in dB until the capacity model converts SNR to linear.

use std::fmt::Write as _;

use crate::error::{domain, Result};

/// Boltzmann's constant in dBW/K/Hz.
pub const BOLTZMANN_DBW_K_HZ: f64 = -228.6;

/// Reference temperature for noise figure conversion, K.
pub const T0_K: f64 = 290.0;

/// Default antenna noise temperature for handheld (hemispherical) UEs.
pub const HANDHELD_ANTENNA_TEMP_K: f64 = 290.0;
/// Default antenna noise temperature for sky-pointing VSAT terminals.
pub const VSAT_ANTENNA_TEMP_K: f64 = 150.0;

/// Free-space path loss, `20 log10(d_km) + 20 log10(f_GHz) + 92.45`.
pub fn fspl_db(distance_km: f64, freq_ghz: f64) -> Result<f64> {
    if !(distance_km > 0.0 && distance_km.is_finite()) {
        return Err(domain("distance_km must be > 0", distance_km));
    }
    if !(freq_ghz > 0.0 && freq_ghz.is_finite()) {
        return Err(domain("freq_ghz must be > 0", freq_ghz));
    }
    Ok(20.0 * distance_km.log10() + 20.0 * freq_ghz.log10() + 92.45)
}

/// Total carrier EIRP from a per-MHz density.
pub fn total_eirp_dbw(eirp_density_dbw_mhz: f64, bandwidth_mhz: f64) -> Result<f64> {
    if !(bandwidth_mhz > 0.0 && bandwidth_mhz.is_finite()) {
        return Err(domain("bandwidth_mhz must be > 0", bandwidth_mhz));
    }
    Ok(eirp_density_dbw_mhz + 10.0 * bandwidth_mhz.log10())
}

/// Receiver system temperature, `T_a + T0 (10^(NF/10) − 1)`.
pub fn system_noise_temp_k(noise_figure_db: f64, antenna_temp_k: f64) -> Result<f64> {
    if !(noise_figure_db >= 0.0 && noise_figure_db.is_finite()) {
        return Err(domain("noise_figure_db must be >= 0", noise_figure_db));
    }
    if !(antenna_temp_k > 0.0 && antenna_temp_k.is_finite()) {
        return Err(domain("antenna_temp_k must be > 0", antenna_temp_k));
    }
    Ok(antenna_temp_k + T0_K * (10f64.powf(noise_figure_db / 10.0) - 1.0))
}

pub fn g_over_t_dbk(rx_gain_dbi: f64, system_temp_k: f64) -> Result<f64> {
    if !(system_temp_k > 0.0) {
        return Err(domain("system_temp_k must be > 0", system_temp_k));
    }
    Ok(rx_gain_dbi - 10.0 * system_temp_k.log10())
}

/// Large-scale losses on top of FSPL.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LossBreakdown {
    pub fspl_db: f64,
    pub atmospheric_db: f64,
    pub scintillation_db: f64,
    pub shadowing_db: f64,
    /// Polarization mismatch and any other fixed margin.
    pub additional_db: f64,
}

impl LossBreakdown {
    pub fn validate(&self) -> Result<()> {
        for (what, v) in [
            ("fspl_db must be >= 0", self.fspl_db),
            ("atmospheric_db must be >= 0", self.atmospheric_db),
            ("scintillation_db must be >= 0", self.scintillation_db),
            ("shadowing_db must be >= 0", self.shadowing_db),
            ("additional_db must be >= 0", self.additional_db),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(domain(what, v));
            }
        }
        Ok(())
    }

    pub fn total_db(&self) -> f64 {
        self.fspl_db + self.atmospheric_db + self.scintillation_db + self.shadowing_db + self.additional_db
    }

    pub fn non_fspl_db(&self) -> f64 {
        self.total_db() - self.fspl_db
    }
}

/// Inputs to the SNR equation, all in dB units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrInputs {
    pub eirp_dbw: f64,
    pub g_over_t_dbk: f64,
    pub path_loss_db: f64,
    pub bandwidth_hz: f64,
}

/// `SNR = EIRP + G/T − k − PL − 10 log10(B)`.
pub fn snr_db(inputs: &SnrInputs) -> Result<f64> {
    let SnrInputs {
        eirp_dbw,
        g_over_t_dbk,
        path_loss_db,
        bandwidth_hz,
    } = *inputs;
    for (what, v) in [
        ("eirp_dbw must be finite", eirp_dbw),
        ("g_over_t_dbk must be finite", g_over_t_dbk),
        ("path_loss_db must be finite", path_loss_db),
    ] {
        if !v.is_finite() {
            return Err(domain(what, v));
        }
    }
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(domain("bandwidth_hz must be > 0", bandwidth_hz));
    }
    Ok(eirp_dbw + g_over_t_dbk - BOLTZMANN_DBW_K_HZ - path_loss_db - 10.0 * bandwidth_hz.log10())
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// A fully evaluated downlink budget.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudget {
    pub slant_range_km: f64,
    pub fspl_db: f64,
    pub losses: LossBreakdown,
    pub total_pl_db: f64,
    pub eirp_density_dbw_mhz: f64,
    pub eirp_total_dbw: f64,
    pub rx_gain_dbi: f64,
    pub system_temp_k: f64,
    pub g_over_t_dbk: f64,
    pub bandwidth_hz: f64,
    pub snr_db: f64,
}

impl LinkBudget {
    pub fn snr_linear(&self) -> f64 {
        db_to_linear(self.snr_db)
    }

    /// Recomputes SNR from the stored fields.
    pub fn recompute_snr_db(&self) -> Result<f64> {
        snr_db(&SnrInputs {
            eirp_dbw: self.eirp_total_dbw,
            g_over_t_dbk: self.g_over_t_dbk,
            path_loss_db: self.total_pl_db,
            bandwidth_hz: self.bandwidth_hz,
        })
    }

    /// `(component, value, unit)` rows, in equation order.
    pub fn components(&self) -> Vec<(&'static str, f64, &'static str)> {
        vec![
            ("slant_range", self.slant_range_km, "km"),
            ("eirp_density", self.eirp_density_dbw_mhz, "dBW/MHz"),
            ("eirp_total", self.eirp_total_dbw, "dBW"),
            ("rx_antenna_gain", self.rx_gain_dbi, "dBi"),
            ("system_noise_temp", self.system_temp_k, "K"),
            ("g_over_t", self.g_over_t_dbk, "dB/K"),
            ("boltzmann", BOLTZMANN_DBW_K_HZ, "dBW/K/Hz"),
            ("fspl", self.fspl_db, "dB"),
            ("atmospheric_loss", self.losses.atmospheric_db, "dB"),
            ("shadowing_loss", self.losses.shadowing_db, "dB"),
            ("scintillation_loss", self.losses.scintillation_db, "dB"),
            ("additional_loss", self.losses.additional_db, "dB"),
            ("total_path_loss", self.total_pl_db, "dB"),
            ("bandwidth", 10.0 * self.bandwidth_hz.log10(), "dBHz"),
            ("snr", self.snr_db, "dB"),
        ]
    }

    pub fn to_text_table(&self, title: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Downlink budget: {title}");
        let _ = writeln!(out, "{:<20} {:>14}  unit", "component", "value");
        for (name, v, unit) in self.components() {
            let _ = writeln!(out, "{name:<20} {v:>14.4}  {unit}");
        }
        out
    }

    /// CSV with header `component,value,unit`, one row per component.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("component,value,unit\n");
        for (name, v, unit) in self.components() {
            let _ = writeln!(out, "{name},{v},{unit}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fspl_values() {
        assert!((fspl_db(1.0, 1.0).unwrap() - 92.45).abs() < 1e-12);
        assert!((fspl_db(1075.1, 2.0).unwrap() - 159.1).abs() < 0.05);
        assert!((fspl_db(40316.0, 20.0).unwrap() - 210.6).abs() < 0.05);
        assert!(fspl_db(0.0, 2.0).is_err());
        assert!(fspl_db(100.0, -2.0).is_err());
    }

    #[test]
    fn eirp_aggregation() {
        assert_eq!(total_eirp_dbw(34.0, 1.0).unwrap(), 34.0);
        assert!((total_eirp_dbw(34.0, 30.0).unwrap() - 48.77).abs() < 0.01);
        assert!((total_eirp_dbw(4.0, 400.0).unwrap() - 30.02).abs() < 0.01);
        assert!(total_eirp_dbw(34.0, 0.0).is_err());
    }

    #[test]
    fn noise_temperature() {
        assert!((system_noise_temp_k(0.0, 290.0).unwrap() - 290.0).abs() < 1e-12);
        assert!((system_noise_temp_k(7.0, 290.0).unwrap() - 1452.7).abs() < 1.0);
        let t = system_noise_temp_k(1.2, 150.0).unwrap();
        assert!((t - 242.2).abs() < 1.0);
        assert!((g_over_t_dbk(39.7, t).unwrap() - 15.86).abs() < 0.01);
        assert!(system_noise_temp_k(-1.0, 290.0).is_err());
        assert!(system_noise_temp_k(1.0, 0.0).is_err());
    }

    #[test]
    fn snr_boltzmann_only() {
        let s = snr_db(&SnrInputs {
            eirp_dbw: 0.0,
            g_over_t_dbk: 0.0,
            path_loss_db: 0.0,
            bandwidth_hz: 1.0,
        })
        .unwrap();
        assert!((s - 228.6).abs() < 1e-12);
    }

    #[test]
    fn snr_rejects_bad_inputs() {
        let mut i = SnrInputs {
            eirp_dbw: 0.0,
            g_over_t_dbk: 0.0,
            path_loss_db: f64::NAN,
            bandwidth_hz: 1.0,
        };
        assert!(snr_db(&i).is_err());
        i.path_loss_db = 0.0;
        i.bandwidth_hz = 0.0;
        assert!(snr_db(&i).is_err());
    }

    #[test]
    fn loss_breakdown_sums_and_validates() {
        let l = LossBreakdown {
            fspl_db: 159.0,
            atmospheric_db: 0.1,
            scintillation_db: 2.2,
            shadowing_db: 3.0,
            additional_db: 0.5,
        };
        assert!((l.total_db() - 164.8).abs() < 1e-9);
        assert!((l.non_fspl_db() - 5.8).abs() < 1e-9);
        assert!(l.validate().is_ok());
        let bad = LossBreakdown {
            shadowing_db: -1.0,
            ..l
        };
        assert!(bad.validate().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn unit_slopes(eirp in -20.0f64..80.0, gt in -40.0f64..30.0, pl in 100.0f64..250.0,
                           bw in 1e3f64..1e9, delta in 0.01f64..10.0) {
                let base = SnrInputs { eirp_dbw: eirp, g_over_t_dbk: gt, path_loss_db: pl, bandwidth_hz: bw };
                let s0 = snr_db(&base).unwrap();
                let s_eirp = snr_db(&SnrInputs { eirp_dbw: eirp + delta, ..base }).unwrap();
                let s_gt = snr_db(&SnrInputs { g_over_t_dbk: gt + delta, ..base }).unwrap();
                let s_pl = snr_db(&SnrInputs { path_loss_db: pl + delta, ..base }).unwrap();
                let s_bw = snr_db(&SnrInputs { bandwidth_hz: bw * 10f64.powf(delta / 10.0), ..base }).unwrap();
                prop_assert!((s_eirp - s0 - delta).abs() < 1e-9);
                prop_assert!((s_gt - s0 - delta).abs() < 1e-9);
                prop_assert!((s0 - s_pl - delta).abs() < 1e-9);
                prop_assert!((s0 - s_bw - delta).abs() < 1e-9);
            }
        }
    }
}
