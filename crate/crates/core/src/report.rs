//! Sweep aggregation, calibration checks against reference values, and
//! CSV / text output.

use std::fmt::Write as _;
use std::path::Path;

use crate::engine::RunMetrics;
use crate::error::{domain, Error, Result};
use crate::scenario::ResolvedScenario;

pub const CSV_HEADER: &str =
    "scenario,rate_mbps,throughput_mbps,pdr,latency_mean_ms,latency_p95_ms,dropped,generated";

pub const FSPL_TOLERANCE_DB: f64 = 0.05;
pub const SNR_TOLERANCE_DB: f64 = 0.3;

/// Reference DL FSPL and SNR (dB) of the calibration presets.
pub const REFERENCE_BUDGETS: [(&str, f64, f64); 4] = [
    ("sc9", 159.1, 6.6),
    ("sc6", 179.1, 8.5),
    ("sc4", 190.6, 0.0),
    ("sc1", 210.6, 11.6),
];

/// Reference saturation throughput (bit/s) for the presets.
pub const REFERENCE_PLATEAUS_BPS: [(&str, f64); 4] = [
    ("sc6", 302.72e6),
    ("sc1", 469.94e6),
    ("sc9", 76.43e6),
    ("sc4", 21.68e6),
];

pub fn reference_budget(id: &str) -> Option<(f64, f64)> {
    REFERENCE_BUDGETS
        .iter()
        .find(|(k, _, _)| *k == id)
        .map(|&(_, fspl, snr)| (fspl, snr))
}

/// Capacity per unit of illuminated area, bit/s per km².
pub fn area_capacity_density(capacity_bps: f64, footprint_area_km2: f64) -> Result<f64> {
    if !(footprint_area_km2 > 0.0 && footprint_area_km2.is_finite()) {
        return Err(domain("footprint area must be > 0", footprint_area_km2));
    }
    if !(capacity_bps >= 0.0) {
        return Err(domain("capacity must be >= 0", capacity_bps));
    }
    Ok(capacity_bps / footprint_area_km2)
}

// ============================================================================
// Sweep reports
// ============================================================================

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rate_mbps: f64,
    pub throughput_mbps: f64,
    pub pdr: f64,
    /// Zero when no packet was delivered.
    pub latency_mean_ms: f64,
    pub latency_p95_ms: f64,
    pub dropped: u64,
    pub generated: u64,
}

impl SweepRow {
    pub fn from_metrics(rate_bps: f64, m: &RunMetrics) -> Self {
        let (mean, p95) = m
            .latency_ms
            .map(|l| (l.mean_ms, l.p95_ms))
            .unwrap_or((0.0, 0.0));
        Self {
            rate_mbps: rate_bps / 1e6,
            throughput_mbps: m.throughput_bps / 1e6,
            pdr: m.pdr,
            latency_mean_ms: mean,
            latency_p95_ms: p95,
            dropped: m.dropped_count,
            generated: m.generated_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub scenario_id: String,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    /// Builds a report, sorting rows by rate.
    pub fn new(scenario_id: impl Into<String>, mut rows: Vec<SweepRow>) -> Self {
        rows.sort_by(|a, b| a.rate_mbps.total_cmp(&b.rate_mbps));
        Self {
            scenario_id: scenario_id.into(),
            rows,
        }
    }

    pub fn from_sweep(scenario_id: impl Into<String>, results: &[(f64, RunMetrics)]) -> Self {
        Self::new(
            scenario_id,
            results
                .iter()
                .map(|(r, m)| SweepRow::from_metrics(*r, m))
                .collect(),
        )
    }
}

/// Renders one or more reports as CSV, grouped by scenario in the order
/// given. Floats use shortest round-trip formatting.
pub fn to_csv_string(reports: &[SweepReport]) -> String {
    let mut out = String::with_capacity(64 * (1 + reports.iter().map(|r| r.rows.len()).sum::<usize>()));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for rep in reports {
        for row in &rep.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                rep.scenario_id,
                row.rate_mbps,
                row.throughput_mbps,
                row.pdr,
                row.latency_mean_ms,
                row.latency_p95_ms,
                row.dropped,
                row.generated
            );
        }
    }
    out
}

pub fn write_csv(reports: &[SweepReport], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_csv_string(reports)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses CSV produced by [`to_csv_string`] back into reports.
pub fn parse_csv(text: &str) -> Result<Vec<SweepReport>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: "missing or unexpected CSV header".into(),
            })
        }
    }
    let mut reports: Vec<SweepReport> = Vec::new();
    for (idx, line) in lines {
        let bad = |what: &str| Error::Parse {
            line: idx + 1,
            message: format!("{what}: '{line}'"),
        };
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 {
            return Err(bad("expected 8 columns"));
        }
        let f = |i: usize| cols[i].parse::<f64>().map_err(|_| bad("bad number"));
        let u = |i: usize| cols[i].parse::<u64>().map_err(|_| bad("bad integer"));
        let row = SweepRow {
            rate_mbps: f(1)?,
            throughput_mbps: f(2)?,
            pdr: f(3)?,
            latency_mean_ms: f(4)?,
            latency_p95_ms: f(5)?,
            dropped: u(6)?,
            generated: u(7)?,
        };
        match reports.last_mut() {
            Some(r) if r.scenario_id == cols[0] => r.rows.push(row),
            _ => reports.push(SweepReport {
                scenario_id: cols[0].to_string(),
                rows: vec![row],
            }),
        }
    }
    Ok(reports)
}

// ============================================================================
// Calibration
// ============================================================================

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationCheck {
    pub quantity: &'static str,
    pub computed: f64,
    pub reference: f64,
    pub tolerance: f64,
}

impl CalibrationCheck {
    pub fn delta(&self) -> f64 {
        self.computed - self.reference
    }

    pub fn passed(&self) -> bool {
        self.delta().abs() <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub scenario_id: String,
    pub checks: Vec<CalibrationCheck>,
}

impl CalibrationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(CalibrationCheck::passed)
    }

    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "{} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.scenario_id
        );
        for c in &self.checks {
            let _ = write!(
                s,
                "  {}={:.3} (ref {:.1}, delta {:+.3}, tol {})",
                c.quantity,
                c.computed,
                c.reference,
                c.delta(),
                c.tolerance
            );
        }
        s
    }
}

/// Compares a resolved preset's FSPL and SNR to the reference budget.
pub fn validate_calibration(resolved: &ResolvedScenario) -> Result<CalibrationReport> {
    let id = resolved.id();
    let (fspl, snr) = reference_budget(id).ok_or_else(|| Error::NotFound(id.to_string()))?;
    Ok(CalibrationReport {
        scenario_id: id.to_string(),
        checks: vec![
            CalibrationCheck {
                quantity: "fspl_db",
                computed: resolved.budget.fspl_db,
                reference: fspl,
                tolerance: FSPL_TOLERANCE_DB,
            },
            CalibrationCheck {
                quantity: "snr_db",
                computed: resolved.budget.snr_db,
                reference: snr,
                tolerance: SNR_TOLERANCE_DB,
            },
        ],
    })
}
