//! Scenario configuration: built-in presets, config files, and resolution
//! into a fully derived simulation input.

mod keyfile;

use std::fmt::Write as _;
use std::path::Path;

pub use keyfile::{parse_override, Entry, KeyFile};

use crate::antenna::{AntennaKind, AntennaSpec, DEFAULT_APERTURE_EFFICIENCY};
use crate::error::{Error, Result};
use crate::geometry::{self, OrbitGeometry, EARTH_RADIUS_KM};
use crate::linkbudget::{self, LinkBudget, LossBreakdown, SnrInputs};
use crate::phy::{CapacityModel, Numerology};

/// Identifiers of the shipped presets.
pub const BUILTIN_IDS: [&str; 4] = ["sc1", "sc4", "sc6", "sc9"];

const SC1_CFG: &str = include_str!("../../../../scenarios/sc1.cfg");
const SC4_CFG: &str = include_str!("../../../../scenarios/sc4.cfg");
const SC6_CFG: &str = include_str!("../../../../scenarios/sc6.cfg");
const SC9_CFG: &str = include_str!("../../../../scenarios/sc9.cfg");

/// Every key a configuration file may contain, in serialization order.
pub const KNOWN_KEYS: [&str; 29] = [
    "id",
    "carrier_freq_ghz",
    "bandwidth_mhz",
    "altitude_km",
    "elevation_deg",
    "earth_radius_km",
    "sat_eirp_density_dbw_mhz",
    "sat_antenna.kind",
    "sat_antenna.boresight_gain_dbi",
    "sat_antenna.diameter_m",
    "sat_antenna.efficiency",
    "ue_antenna.kind",
    "ue_antenna.boresight_gain_dbi",
    "ue_antenna.diameter_m",
    "ue_antenna.efficiency",
    "ue_noise_figure_db",
    "antenna_temp_k",
    "losses.atmospheric_db",
    "losses.shadowing_db",
    "losses.scintillation_db",
    "losses.additional_db",
    "numerology_mu",
    "capacity.gap_db",
    "capacity.overhead_fraction",
    "capacity.se_table",
    "capacity.calibrated_capacity_bps",
    "backhaul_delay_ms",
    "buffer_bytes",
    "beam_diameter_km",
];

// ============================================================================
// ScenarioConfig
// ============================================================================

/// All inputs describing one downlink scenario.
///
/// `losses.fspl_db` is always zero here; the free-space term is derived from
/// geometry at resolution time.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub id: String,
    pub carrier_freq_ghz: f64,
    pub bandwidth_mhz: f64,
    pub altitude_km: f64,
    pub elevation_deg: f64,
    pub earth_radius_km: f64,
    pub sat_eirp_density_dbw_mhz: f64,
    pub sat_antenna: AntennaSpec,
    pub ue_antenna: AntennaSpec,
    pub ue_noise_figure_db: f64,
    pub antenna_temp_k: f64,
    pub losses: LossBreakdown,
    pub numerology_mu: u8,
    pub capacity: CapacityModel,
    pub backhaul_delay_ms: f64,
    pub buffer_bytes: u64,
    pub beam_diameter_km: Option<f64>,
}

/// Returns one of the shipped presets (`sc1`, `sc4`, `sc6`, `sc9`).
pub fn builtin(id: &str) -> Result<ScenarioConfig> {
    ScenarioConfig::from_str_with_overrides(builtin_text(id)?, &[])
}

/// Raw text of a shipped preset.
pub fn builtin_text(id: &str) -> Result<&'static str> {
    match id {
        "sc1" => Ok(SC1_CFG),
        "sc4" => Ok(SC4_CFG),
        "sc6" => Ok(SC6_CFG),
        "sc9" => Ok(SC9_CFG),
        other => Err(Error::NotFound(other.to_string())),
    }
}

/// Loads and validates a configuration file.
pub fn load(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    load_with_overrides(path, &[])
}

/// Loads a configuration file, then applies `key=value` overrides before
/// validation.
pub fn load_with_overrides(path: impl AsRef<Path>, overrides: &[(String, String)]) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ScenarioConfig::from_str_with_overrides(&text, overrides)
}

fn schema(field: &str, constraint: impl Into<String>, value: impl Into<String>) -> Error {
    Error::Schema {
        field: field.to_string(),
        constraint: constraint.into(),
        value: value.into(),
    }
}

/// Typed access to a [`KeyFile`] that reports failures as schema violations.
struct Fields<'a>(&'a KeyFile);

impl Fields<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.value(key)
    }

    fn f64_opt(&self, key: &str) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Some(x)),
                _ => Err(schema(key, "must be a finite number", v)),
            },
        }
    }

    fn f64_req(&self, key: &str) -> Result<f64> {
        self.f64_opt(key)?
            .ok_or_else(|| schema(key, "is required", "<missing>"))
    }

    fn u64_opt(&self, key: &str) -> Result<Option<u64>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u64>()
                .map(Some)
                .map_err(|_| schema(key, "must be a non-negative integer", v)),
        }
    }

    fn u64_req(&self, key: &str) -> Result<u64> {
        self.u64_opt(key)?
            .ok_or_else(|| schema(key, "is required", "<missing>"))
    }

    fn kind(&self, key: &str, default: AntennaKind) -> Result<AntennaKind> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| schema(key, "must be one of circular_aperture, upa_isotropic, vsat", v)),
        }
    }

    fn f64_list_opt(&self, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(v) = self.raw(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Some)
            .map_err(|_| schema(key, "must be a comma-separated list of numbers", v))
    }

    fn antenna(&self, prefix: &str, default_kind: AntennaKind) -> Result<AntennaSpec> {
        let key = |k: &str| format!("{prefix}.{k}");
        Ok(AntennaSpec {
            kind: self.kind(&key("kind"), default_kind)?,
            boresight_gain_dbi: self.f64_req(&key("boresight_gain_dbi"))?,
            diameter_m: self.f64_opt(&key("diameter_m"))?,
            efficiency: self
                .f64_opt(&key("efficiency"))?
                .unwrap_or(DEFAULT_APERTURE_EFFICIENCY),
        })
    }
}

fn check(ok: bool, field: &str, constraint: &str, value: impl ToString) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(schema(field, constraint, value.to_string()))
    }
}

impl ScenarioConfig {
    /// Parses configuration text, applies overrides, and validates.
    pub fn from_str_with_overrides(text: &str, overrides: &[(String, String)]) -> Result<Self> {
        let mut kf = KeyFile::parse(text)?;
        for entry in kf.entries() {
            if !KNOWN_KEYS.contains(&entry.key.as_str()) {
                return Err(Error::Parse {
                    line: entry.line,
                    message: format!("unknown key '{}'", entry.key),
                });
            }
        }
        for (k, v) in overrides {
            if !KNOWN_KEYS.contains(&k.as_str()) {
                return Err(schema(k, "is not a known configuration key", v.as_str()));
            }
            kf.set(k, v);
        }
        Self::from_keyfile(&kf)
    }

    fn from_keyfile(kf: &KeyFile) -> Result<Self> {
        let f = Fields(kf);
        let id = f
            .raw("id")
            .ok_or_else(|| schema("id", "is required", "<missing>"))?
            .to_string();
        let ue_antenna = f.antenna("ue_antenna", AntennaKind::UpaIsotropic)?;
        let default_temp = match ue_antenna.kind {
            AntennaKind::Vsat => linkbudget::VSAT_ANTENNA_TEMP_K,
            _ => linkbudget::HANDHELD_ANTENNA_TEMP_K,
        };
        let defaults = CapacityModel::default();
        let mu = f.u64_req("numerology_mu")?;
        check(mu <= 4, "numerology_mu", "must be in 0..=4", mu)?;
        let cfg = ScenarioConfig {
            id,
            carrier_freq_ghz: f.f64_req("carrier_freq_ghz")?,
            bandwidth_mhz: f.f64_req("bandwidth_mhz")?,
            altitude_km: f.f64_req("altitude_km")?,
            elevation_deg: f.f64_req("elevation_deg")?,
            earth_radius_km: f.f64_opt("earth_radius_km")?.unwrap_or(EARTH_RADIUS_KM),
            sat_eirp_density_dbw_mhz: f.f64_req("sat_eirp_density_dbw_mhz")?,
            sat_antenna: f.antenna("sat_antenna", AntennaKind::CircularAperture)?,
            ue_antenna,
            ue_noise_figure_db: f.f64_req("ue_noise_figure_db")?,
            antenna_temp_k: f.f64_opt("antenna_temp_k")?.unwrap_or(default_temp),
            losses: LossBreakdown {
                fspl_db: 0.0,
                atmospheric_db: f.f64_opt("losses.atmospheric_db")?.unwrap_or(0.0),
                scintillation_db: f.f64_opt("losses.scintillation_db")?.unwrap_or(0.0),
                shadowing_db: f.f64_opt("losses.shadowing_db")?.unwrap_or(0.0),
                additional_db: f.f64_opt("losses.additional_db")?.unwrap_or(0.0),
            },
            numerology_mu: mu as u8,
            capacity: CapacityModel {
                gap_db: f.f64_opt("capacity.gap_db")?.unwrap_or(defaults.gap_db),
                overhead_fraction: f
                    .f64_opt("capacity.overhead_fraction")?
                    .unwrap_or(defaults.overhead_fraction),
                se_table: f.f64_list_opt("capacity.se_table")?.unwrap_or(defaults.se_table),
                calibrated_capacity_bps: f.f64_opt("capacity.calibrated_capacity_bps")?,
            },
            backhaul_delay_ms: f.f64_opt("backhaul_delay_ms")?.unwrap_or(0.0),
            buffer_bytes: f.u64_req("buffer_bytes")?,
            beam_diameter_km: f.f64_opt("beam_diameter_km")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks every field constraint, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let id_ok = !self.id.is_empty()
            && self
                .id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
        check(id_ok, "id", "must be a non-empty [A-Za-z0-9_-] identifier", &self.id)?;
        check(self.carrier_freq_ghz > 0.0, "carrier_freq_ghz", "must be > 0", self.carrier_freq_ghz)?;
        check(self.bandwidth_mhz > 0.0, "bandwidth_mhz", "must be > 0", self.bandwidth_mhz)?;
        check(self.altitude_km > 0.0, "altitude_km", "must be > 0", self.altitude_km)?;
        check(
            self.elevation_deg > 0.0 && self.elevation_deg <= 90.0,
            "elevation_deg",
            "must be in (0, 90]",
            self.elevation_deg,
        )?;
        check(self.earth_radius_km > 0.0, "earth_radius_km", "must be > 0", self.earth_radius_km)?;
        for (prefix, ant) in [("sat_antenna", &self.sat_antenna), ("ue_antenna", &self.ue_antenna)] {
            if let Some(d) = ant.diameter_m {
                check(d > 0.0, &format!("{prefix}.diameter_m"), "must be > 0", d)?;
            }
            check(
                ant.efficiency > 0.0 && ant.efficiency <= 1.0,
                &format!("{prefix}.efficiency"),
                "must be in (0, 1]",
                ant.efficiency,
            )?;
        }
        check(self.ue_noise_figure_db >= 0.0, "ue_noise_figure_db", "must be >= 0", self.ue_noise_figure_db)?;
        check(self.antenna_temp_k > 0.0, "antenna_temp_k", "must be > 0", self.antenna_temp_k)?;
        for (key, v) in [
            ("losses.atmospheric_db", self.losses.atmospheric_db),
            ("losses.shadowing_db", self.losses.shadowing_db),
            ("losses.scintillation_db", self.losses.scintillation_db),
            ("losses.additional_db", self.losses.additional_db),
        ] {
            check(v >= 0.0, key, "must be >= 0", v)?;
        }
        check(self.numerology_mu <= 4, "numerology_mu", "must be in 0..=4", self.numerology_mu)?;
        let cap = &self.capacity;
        check(cap.gap_db.is_finite(), "capacity.gap_db", "must be finite", cap.gap_db)?;
        check(
            (0.0..1.0).contains(&cap.overhead_fraction),
            "capacity.overhead_fraction",
            "must be in [0, 1)",
            cap.overhead_fraction,
        )?;
        let table_ok = !cap.se_table.is_empty()
            && cap.se_table.iter().all(|v| *v > 0.0)
            && cap.se_table.windows(2).all(|w| w[0] < w[1]);
        check(
            table_ok,
            "capacity.se_table",
            "must be non-empty, positive and strictly increasing",
            format!("{:?}", cap.se_table),
        )?;
        if let Some(c) = cap.calibrated_capacity_bps {
            check(c >= 0.0, "capacity.calibrated_capacity_bps", "must be >= 0", c)?;
        }
        check(self.backhaul_delay_ms >= 0.0, "backhaul_delay_ms", "must be >= 0", self.backhaul_delay_ms)?;
        check(self.buffer_bytes > 0, "buffer_bytes", "must be > 0", self.buffer_bytes)?;
        if let Some(d) = self.beam_diameter_km {
            check(d > 0.0, "beam_diameter_km", "must be > 0", d)?;
        }
        Ok(())
    }

    /// Serializes to the configuration file format. Floats are written in
    /// shortest round-trip form, so reloading yields an equal value.
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("id", self.id.clone());
        put("carrier_freq_ghz", self.carrier_freq_ghz.to_string());
        put("bandwidth_mhz", self.bandwidth_mhz.to_string());
        put("altitude_km", self.altitude_km.to_string());
        put("elevation_deg", self.elevation_deg.to_string());
        put("earth_radius_km", self.earth_radius_km.to_string());
        put("sat_eirp_density_dbw_mhz", self.sat_eirp_density_dbw_mhz.to_string());
        for (prefix, ant) in [("sat_antenna", &self.sat_antenna), ("ue_antenna", &self.ue_antenna)] {
            put(&format!("{prefix}.kind"), ant.kind.to_string());
            put(&format!("{prefix}.boresight_gain_dbi"), ant.boresight_gain_dbi.to_string());
            if let Some(d) = ant.diameter_m {
                put(&format!("{prefix}.diameter_m"), d.to_string());
            }
            put(&format!("{prefix}.efficiency"), ant.efficiency.to_string());
        }
        put("ue_noise_figure_db", self.ue_noise_figure_db.to_string());
        put("antenna_temp_k", self.antenna_temp_k.to_string());
        put("losses.atmospheric_db", self.losses.atmospheric_db.to_string());
        put("losses.shadowing_db", self.losses.shadowing_db.to_string());
        put("losses.scintillation_db", self.losses.scintillation_db.to_string());
        put("losses.additional_db", self.losses.additional_db.to_string());
        put("numerology_mu", self.numerology_mu.to_string());
        put("capacity.gap_db", self.capacity.gap_db.to_string());
        put("capacity.overhead_fraction", self.capacity.overhead_fraction.to_string());
        let table: Vec<String> = self.capacity.se_table.iter().map(f64::to_string).collect();
        put("capacity.se_table", table.join(","));
        if let Some(c) = self.capacity.calibrated_capacity_bps {
            put("capacity.calibrated_capacity_bps", c.to_string());
        }
        put("backhaul_delay_ms", self.backhaul_delay_ms.to_string());
        put("buffer_bytes", self.buffer_bytes.to_string());
        if let Some(d) = self.beam_diameter_km {
            put("beam_diameter_km", d.to_string());
        }
        out
    }

    pub fn geometry(&self) -> OrbitGeometry {
        OrbitGeometry {
            altitude_km: self.altitude_km,
            elevation_deg: self.elevation_deg,
            earth_radius_km: self.earth_radius_km,
        }
    }

    pub fn numerology(&self) -> Result<Numerology> {
        Numerology::new(self.numerology_mu)
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_mhz * 1e6
    }

    pub fn link_budget(&self) -> Result<LinkBudget> {
        let slant_range_km = geometry::slant_range(&self.geometry())?;
        let fspl_db = linkbudget::fspl_db(slant_range_km, self.carrier_freq_ghz)?;
        let losses = LossBreakdown {
            fspl_db,
            ..self.losses
        };
        losses.validate()?;
        let total_pl_db = losses.total_db();
        let eirp_total_dbw = linkbudget::total_eirp_dbw(self.sat_eirp_density_dbw_mhz, self.bandwidth_mhz)?;
        let rx_gain_dbi = self.ue_antenna.boresight_gain_dbi;
        let system_temp_k = linkbudget::system_noise_temp_k(self.ue_noise_figure_db, self.antenna_temp_k)?;
        let g_over_t_dbk = linkbudget::g_over_t_dbk(rx_gain_dbi, system_temp_k)?;
        let bandwidth_hz = self.bandwidth_hz();
        let snr_db = linkbudget::snr_db(&SnrInputs {
            eirp_dbw: eirp_total_dbw,
            g_over_t_dbk,
            path_loss_db: total_pl_db,
            bandwidth_hz,
        })?;
        Ok(LinkBudget {
            slant_range_km,
            fspl_db,
            losses,
            total_pl_db,
            eirp_density_dbw_mhz: self.sat_eirp_density_dbw_mhz,
            eirp_total_dbw,
            rx_gain_dbi,
            system_temp_k,
            g_over_t_dbk,
            bandwidth_hz,
            snr_db,
        })
    }

    /// Applies `key=value` overrides by round-tripping through the file
    /// format, so they are validated exactly as file contents would be.
    pub fn with_overrides(&self, overrides: &[(String, String)]) -> Result<Self> {
        Self::from_str_with_overrides(&self.to_config_string(), overrides)
    }
}

// ============================================================================
// ResolvedScenario
// ============================================================================

/// A configuration together with every quantity derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedScenario {
    pub config: ScenarioConfig,
    pub budget: LinkBudget,
    pub capacity_bps: f64,
    pub propagation_delay_s: f64,
    /// Backhaul plus satellite-to-UE propagation.
    pub one_way_delay_s: f64,
    pub slot_duration_s: f64,
    pub footprint_area_km2: Option<f64>,
}

/// Derives link budget, capacity and delays from a configuration.
pub fn resolve(config: &ScenarioConfig) -> Result<ResolvedScenario> {
    config.validate()?;
    config.capacity.validate()?;
    let budget = config.link_budget()?;
    let capacity_bps = config.capacity.capacity_bps(budget.bandwidth_hz, budget.snr_db)?;
    let propagation_delay_s = geometry::propagation_delay(budget.slant_range_km)?;
    let one_way_delay_s = propagation_delay_s + config.backhaul_delay_ms * 1e-3;
    let slot_duration_s = config.numerology()?.slot_duration_ms() * 1e-3;
    let footprint_area_km2 = config
        .beam_diameter_km
        .map(geometry::footprint_area)
        .transpose()?;
    Ok(ResolvedScenario {
        config: config.clone(),
        budget,
        capacity_bps,
        propagation_delay_s,
        one_way_delay_s,
        slot_duration_s,
        footprint_area_km2,
    })
}

impl ResolvedScenario {
    pub fn id(&self) -> &str {
        &self.config.id
    }

    /// Capacity from the analytic gap/CQI model, ignoring any calibrated
    /// override.
    pub fn analytic_capacity_bps(&self) -> Result<f64> {
        self.config
            .capacity
            .analytic_capacity_bps(self.budget.bandwidth_hz, self.budget.snr_db)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_presets() {
        let sc9 = builtin("sc9").unwrap();
        assert_eq!(sc9.bandwidth_mhz, 30.0);
        assert_eq!(sc9.elevation_deg, 30.0);
        assert_eq!(sc9.carrier_freq_ghz, 2.0);
        assert_eq!(sc9.altitude_km, 600.0);
        assert_eq!(sc9.sat_eirp_density_dbw_mhz, 34.0);
        assert_eq!(sc9.sat_antenna.boresight_gain_dbi, 30.0);
        assert_eq!(sc9.ue_antenna.boresight_gain_dbi, 0.0);
        assert_eq!(sc9.ue_noise_figure_db, 7.0);
        let sc1 = builtin("sc1").unwrap();
        assert_eq!(sc1.sat_eirp_density_dbw_mhz, 40.0);
        assert_eq!(sc1.altitude_km, 35786.0);
        assert_eq!(sc1.elevation_deg, 12.5);
        assert_eq!(sc1.bandwidth_mhz, 400.0);
        assert_eq!(sc1.sat_antenna.boresight_gain_dbi, 58.5);
        assert_eq!(sc1.ue_antenna.boresight_gain_dbi, 39.7);
        assert_eq!(sc1.ue_noise_figure_db, 1.2);
        assert!(matches!(builtin("sc0"), Err(Error::NotFound(_))));
    }

    #[test]
    fn numerology_follows_band() {
        for id in BUILTIN_IDS {
            let cfg = builtin(id).unwrap();
            let expected = if cfg.carrier_freq_ghz < 7.125 { 2 } else { 3 };
            assert_eq!(cfg.numerology_mu, expected, "{id}");
        }
    }

    #[test]
    fn resolve_examples() {
        let r = resolve(&builtin("sc9").unwrap()).unwrap();
        assert!((r.budget.fspl_db - 159.1).abs() < 0.05);
        let r = resolve(&builtin("sc6").unwrap()).unwrap();
        assert!((r.budget.snr_db - 8.5).abs() < 0.3);
        let r = resolve(&builtin("sc4").unwrap()).unwrap();
        assert!(r.one_way_delay_s >= 0.134);
    }

    #[test]
    fn schema_violations_name_the_field() {
        let text = builtin_text("sc6").unwrap();
        let bad = text.replace("elevation_deg = 30", "elevation_deg = 95");
        match ScenarioConfig::from_str_with_overrides(&bad, &[]) {
            Err(Error::Schema { field, value, .. }) => {
                assert_eq!(field, "elevation_deg");
                assert_eq!(value, "95");
            }
            other => panic!("unexpected {other:?}"),
        }
        let missing: String = text
            .lines()
            .filter(|l| !l.starts_with("bandwidth_mhz"))
            .map(|l| format!("{l}\n"))
            .collect();
        match ScenarioConfig::from_str_with_overrides(&missing, &[]) {
            Err(Error::Schema { field, .. }) => assert_eq!(field, "bandwidth_mhz"),
            other => panic!("unexpected {other:?}"),
        }
        let nan = text.replace("altitude_km = 600", "altitude_km = lots");
        assert!(matches!(
            ScenarioConfig::from_str_with_overrides(&nan, &[]),
            Err(Error::Schema { .. })
        ));
    }

    #[test]
    fn unknown_key_is_a_parse_error_with_line() {
        let text = "id = x\nwhatever = 1\n";
        match ScenarioConfig::from_str_with_overrides(text, &[]) {
            Err(Error::Parse { line, message }) => {
                assert_eq!(line, 2);
                assert!(message.contains("whatever"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn overrides_match_file_edits() {
        let text = builtin_text("sc6").unwrap();
        let edited = text.replace("backhaul_delay_ms = 0.9375", "backhaul_delay_ms = 3");
        let from_file = ScenarioConfig::from_str_with_overrides(&edited, &[]).unwrap();
        let via_override = ScenarioConfig::from_str_with_overrides(
            text,
            &[("backhaul_delay_ms".into(), "3".into())],
        )
        .unwrap();
        assert_eq!(from_file, via_override);
        let err = builtin("sc6")
            .unwrap()
            .with_overrides(&[("elevation_deg".into(), "0".into())])
            .unwrap_err();
        assert!(matches!(err, Error::Schema { ref field, .. } if field == "elevation_deg"));
        assert!(builtin("sc6")
            .unwrap()
            .with_overrides(&[("nonsense".into(), "1".into())])
            .is_err());
    }

    #[test]
    fn defaults_fill_optional_fields() {
        let text = "id = custom\ncarrier_freq_ghz = 2\nbandwidth_mhz = 10\naltitude_km = 600\n\
                    elevation_deg = 45\nsat_eirp_density_dbw_mhz = 30\nsat_antenna.boresight_gain_dbi = 30\n\
                    ue_antenna.boresight_gain_dbi = 0\nue_noise_figure_db = 7\nnumerology_mu = 1\n\
                    buffer_bytes = 100000\n";
        let cfg = ScenarioConfig::from_str_with_overrides(text, &[]).unwrap();
        assert_eq!(cfg.earth_radius_km, EARTH_RADIUS_KM);
        assert_eq!(cfg.antenna_temp_k, 290.0);
        assert_eq!(cfg.ue_antenna.kind, AntennaKind::UpaIsotropic);
        assert_eq!(cfg.sat_antenna.kind, AntennaKind::CircularAperture);
        assert_eq!(cfg.capacity, CapacityModel::default());
        assert_eq!(cfg.backhaul_delay_ms, 0.0);
        assert_eq!(cfg.beam_diameter_km, None);
        let r = resolve(&cfg).unwrap();
        assert!(r.capacity_bps > 0.0);
    }

    #[test]
    fn resolve_is_deterministic() {
        for id in BUILTIN_IDS {
            let cfg = builtin(id).unwrap();
            assert_eq!(resolve(&cfg).unwrap(), resolve(&cfg).unwrap());
        }
    }
}
