//! NR numerology and SNR-to-capacity mapping.

use crate::error::{domain, Error, Result};
use crate::linkbudget::db_to_linear;

/// Spectral efficiencies (bit/s/Hz) of the 4-bit NR CQI table, CQI 1..15.
pub const NR_CQI_EFFICIENCIES: [f64; 15] = [
    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141, 2.4063, 2.7305, 3.3223,
    3.9023, 4.5234, 5.1152, 5.5547,
];

pub const DEFAULT_GAP_DB: f64 = 6.0;
pub const DEFAULT_OVERHEAD_FRACTION: f64 = 0.30;

/// NR numerology μ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Numerology {
    mu: u8,
}

impl Numerology {
    pub fn new(mu: u8) -> Result<Self> {
        if mu > 4 {
            return Err(domain("numerology mu must be in 0..=4", mu as f64));
        }
        Ok(Self { mu })
    }

    pub fn mu(&self) -> u8 {
        self.mu
    }

    pub fn scs_khz(&self) -> f64 {
        15.0 * f64::from(1u32 << self.mu)
    }

    pub fn slot_duration_ms(&self) -> f64 {
        1.0 / f64::from(1u32 << self.mu)
    }

    /// Slot length in integer nanoseconds (exact for μ ≤ 4).
    pub fn slot_duration_ns(&self) -> u64 {
        1_000_000 >> self.mu
    }
}

pub fn slot_duration(mu: u8) -> Result<f64> {
    Ok(Numerology::new(mu)?.slot_duration_ms())
}

/// Gap-to-capacity link model with CQI quantization, plus an optional
/// calibrated rate that bypasses it.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityModel {
    pub gap_db: f64,
    pub overhead_fraction: f64,
    pub se_table: Vec<f64>,
    pub calibrated_capacity_bps: Option<f64>,
}

impl Default for CapacityModel {
    fn default() -> Self {
        Self {
            gap_db: DEFAULT_GAP_DB,
            overhead_fraction: DEFAULT_OVERHEAD_FRACTION,
            se_table: NR_CQI_EFFICIENCIES.to_vec(),
            calibrated_capacity_bps: None,
        }
    }
}

impl CapacityModel {
    pub fn validate(&self) -> Result<()> {
        if !self.gap_db.is_finite() {
            return Err(domain("gap_db must be finite", self.gap_db));
        }
        if !(0.0..1.0).contains(&self.overhead_fraction) {
            return Err(domain("overhead_fraction must be in [0, 1)", self.overhead_fraction));
        }
        if self.se_table.is_empty() {
            return Err(Error::Config("se_table must not be empty".into()));
        }
        if !self.se_table.iter().all(|v| *v > 0.0 && v.is_finite()) {
            return Err(Error::Config("se_table entries must be positive and finite".into()));
        }
        if !self.se_table.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("se_table must be strictly increasing".into()));
        }
        if let Some(c) = self.calibrated_capacity_bps {
            if !(c >= 0.0 && c.is_finite()) {
                return Err(domain("calibrated_capacity_bps must be >= 0", c));
            }
        }
        Ok(())
    }

    /// Shannon efficiency after the implementation gap, before quantization.
    pub fn raw_spectral_efficiency(&self, snr_db: f64) -> f64 {
        let ratio = db_to_linear(snr_db) / db_to_linear(self.gap_db);
        (1.0 + ratio).log2()
    }

    /// Capacity of a carrier at the given SNR, honouring the calibrated
    /// override when present.
    pub fn capacity_bps(&self, bandwidth_hz: f64, snr_db: f64) -> Result<f64> {
        if let Some(c) = self.calibrated_capacity_bps {
            return Ok(c);
        }
        self.analytic_capacity_bps(bandwidth_hz, snr_db)
    }

    /// Capacity from the gap/CQI model alone, ignoring any override.
    pub fn analytic_capacity_bps(&self, bandwidth_hz: f64, snr_db: f64) -> Result<f64> {
        let se = spectral_efficiency(snr_db, self);
        link_capacity_bps(bandwidth_hz, se, self.overhead_fraction)
    }
}

/// Largest table efficiency not exceeding the gap-adjusted Shannon bound,
/// or 0 when even the lowest entry is out of reach.
pub fn spectral_efficiency(snr_db: f64, model: &CapacityModel) -> f64 {
    let raw = model.raw_spectral_efficiency(snr_db);
    if raw.is_nan() {
        return 0.0;
    }
    model
        .se_table
        .iter()
        .rev()
        .copied()
        .find(|se| *se <= raw)
        .unwrap_or(0.0)
}

/// `C = B · SE · (1 − overhead)`.
pub fn link_capacity_bps(bandwidth_hz: f64, se: f64, overhead_fraction: f64) -> Result<f64> {
    if !(bandwidth_hz >= 0.0 && bandwidth_hz.is_finite()) {
        return Err(domain("bandwidth_hz must be >= 0", bandwidth_hz));
    }
    if !(se >= 0.0 && se.is_finite()) {
        return Err(domain("spectral efficiency must be >= 0", se));
    }
    if !(0.0..1.0).contains(&overhead_fraction) {
        return Err(domain("overhead_fraction must be in [0, 1)", overhead_fraction));
    }
    Ok(bandwidth_hz * se * (1.0 - overhead_fraction))
}
