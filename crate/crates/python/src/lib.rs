//! Python bindings for `ntnsim`, importable as the `ntnsim` module.

use std::collections::HashMap;

use pyo3::exceptions::{PyKeyError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ntnsim::engine::{self, RunMetrics, RunParams};
use ntnsim::scenario::{self, ScenarioConfig};
use ntnsim::{antenna, geometry, linkbudget, report, Error, ResolvedScenario};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NotFound(_) => PyKeyError::new_err(e.to_string()),
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn overrides_vec(overrides: Option<HashMap<String, String>>) -> Vec<(String, String)> {
    let mut v: Vec<_> = overrides.unwrap_or_default().into_iter().collect();
    v.sort();
    v
}

// ============================================================================
// Free functions
// ============================================================================

/// Free-space path loss in dB for a distance in km and carrier in GHz.
#[pyfunction]
fn fspl_db(distance_km: f64, freq_ghz: f64) -> PyResult<f64> {
    linkbudget::fspl_db(distance_km, freq_ghz).map_err(py_err)
}

#[pyfunction]
fn bessel_j1(x: f64) -> PyResult<f64> {
    antenna::bessel_j1(x).map_err(py_err)
}

/// Normalised circular-aperture gain at `theta_deg` off boresight.
#[pyfunction]
fn aperture_gain_rel(theta_deg: f64, kappa_a: f64) -> PyResult<f64> {
    antenna::aperture_gain_rel(theta_deg, kappa_a).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (altitude_km, elevation_deg, earth_radius_km = geometry::EARTH_RADIUS_KM))]
fn slant_range(altitude_km: f64, elevation_deg: f64, earth_radius_km: f64) -> PyResult<f64> {
    let geom = geometry::OrbitGeometry {
        altitude_km,
        elevation_deg,
        earth_radius_km,
    };
    geometry::slant_range(&geom).map_err(py_err)
}

/// One-way propagation delay in seconds.
#[pyfunction]
fn propagation_delay(distance_km: f64) -> PyResult<f64> {
    geometry::propagation_delay(distance_km).map_err(py_err)
}

/// Capacity per unit footprint area, bit/s/km^2.
#[pyfunction]
fn area_capacity_density(capacity_bps: f64, footprint_area_km2: f64) -> PyResult<f64> {
    report::area_capacity_density(capacity_bps, footprint_area_km2).map_err(py_err)
}

// ============================================================================
// Scenario
// ============================================================================

#[pyclass(frozen, module = "ntnsim")]
struct Scenario {
    inner: ResolvedScenario,
}

fn metrics_dict<'py>(py: Python<'py>, rate_mbps: f64, m: &RunMetrics) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("rate_mbps", rate_mbps)?;
    d.set_item("throughput_mbps", m.throughput_bps / 1e6)?;
    d.set_item("pdr", m.pdr)?;
    d.set_item("generated", m.generated_count)?;
    d.set_item("delivered", m.delivered_count)?;
    d.set_item("dropped", m.dropped_count)?;
    d.set_item("in_flight_at_end", m.in_flight_at_end)?;
    d.set_item("latency_floor_ms", m.latency_floor_ns as f64 / 1e6)?;
    d.set_item("in_order", m.in_order)?;
    match &m.latency_ms {
        Some(l) => {
            d.set_item("latency_mean_ms", l.mean_ms)?;
            d.set_item("latency_min_ms", l.min_ms)?;
            d.set_item("latency_p50_ms", l.p50_ms)?;
            d.set_item("latency_p95_ms", l.p95_ms)?;
            d.set_item("latency_max_ms", l.max_ms)?;
        }
        None => d.set_item("latency_mean_ms", py.None())?,
    }
    Ok(d)
}

fn params(duration_s: f64, warmup_s: f64, packet_size_bytes: u32) -> RunParams {
    RunParams {
        duration_s,
        warmup_s,
        packet_size_bytes,
        ..RunParams::new(1.0)
    }
}

impl Scenario {
    fn from_config(cfg: ScenarioConfig) -> PyResult<Self> {
        Ok(Self {
            inner: scenario::resolve(&cfg).map_err(py_err)?,
        })
    }
}

#[pymethods]
impl Scenario {
    /// Built-in preset (`sc1`, `sc4`, `sc6`, `sc9`) with optional key overrides.
    #[staticmethod]
    #[pyo3(signature = (id, overrides = None))]
    fn builtin(id: &str, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        let text = scenario::builtin_text(id).map_err(py_err)?;
        Self::from_config(ScenarioConfig::from_str_with_overrides(text, &overrides_vec(overrides)).map_err(py_err)?)
    }

    #[staticmethod]
    #[pyo3(signature = (path, overrides = None))]
    fn load(path: &str, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        Self::from_config(scenario::load_with_overrides(path, &overrides_vec(overrides)).map_err(py_err)?)
    }

    #[staticmethod]
    #[pyo3(signature = (text, overrides = None))]
    fn from_text(text: &str, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        Self::from_config(ScenarioConfig::from_str_with_overrides(text, &overrides_vec(overrides)).map_err(py_err)?)
    }

    #[getter]
    fn id(&self) -> &str {
        self.inner.id()
    }

    #[getter]
    fn slant_range_km(&self) -> f64 {
        self.inner.budget.slant_range_km
    }

    #[getter]
    fn fspl_db(&self) -> f64 {
        self.inner.budget.fspl_db
    }

    #[getter]
    fn snr_db(&self) -> f64 {
        self.inner.budget.snr_db
    }

    #[getter]
    fn capacity_bps(&self) -> f64 {
        self.inner.capacity_bps
    }

    #[getter]
    fn one_way_delay_s(&self) -> f64 {
        self.inner.one_way_delay_s
    }

    #[getter]
    fn footprint_area_km2(&self) -> Option<f64> {
        self.inner.footprint_area_km2
    }

    fn analytic_capacity_bps(&self) -> PyResult<f64> {
        self.inner.analytic_capacity_bps().map_err(py_err)
    }

    /// Link budget components as `{name: value}`.
    fn budget<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (name, value, _unit) in self.inner.budget.components() {
            d.set_item(name, value)?;
        }
        Ok(d)
    }

    /// `(passed, summary_line)` against the reference FSPL/SNR values.
    fn calibrate(&self) -> PyResult<(bool, String)> {
        let rep = report::validate_calibration(&self.inner).map_err(py_err)?;
        Ok((rep.passed(), rep.summary_line()))
    }

    fn to_config_string(&self) -> String {
        self.inner.config.to_config_string()
    }

    #[pyo3(signature = (rate_mbps, duration_s = engine::DEFAULT_DURATION_S, warmup_s = engine::DEFAULT_WARMUP_S, packet_size_bytes = engine::DEFAULT_PACKET_SIZE_BYTES))]
    fn run<'py>(
        &self,
        py: Python<'py>,
        rate_mbps: f64,
        duration_s: f64,
        warmup_s: f64,
        packet_size_bytes: u32,
    ) -> PyResult<Bound<'py, PyDict>> {
        let p = params(duration_s, warmup_s, packet_size_bytes).with_rate(rate_mbps * 1e6);
        let m = py.detach(|| engine::run(&self.inner, &p)).map_err(py_err)?;
        metrics_dict(py, rate_mbps, &m)
    }

    /// One result dict per rate, in input order.
    #[pyo3(signature = (rates_mbps, duration_s = engine::DEFAULT_DURATION_S, warmup_s = engine::DEFAULT_WARMUP_S, packet_size_bytes = engine::DEFAULT_PACKET_SIZE_BYTES, parallel = 1))]
    fn sweep<'py>(
        &self,
        py: Python<'py>,
        rates_mbps: Vec<f64>,
        duration_s: f64,
        warmup_s: f64,
        packet_size_bytes: u32,
        parallel: usize,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let rates_bps: Vec<f64> = rates_mbps.iter().map(|r| r * 1e6).collect();
        let p = params(duration_s, warmup_s, packet_size_bytes);
        let results = py
            .detach(|| engine::sweep(&self.inner, &rates_bps, &p, parallel))
            .map_err(py_err)?;
        results
            .iter()
            .zip(&rates_mbps)
            .map(|((_, m), r)| metrics_dict(py, *r, m))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Scenario(id={:?}, snr_db={:.3}, capacity_mbps={:.3})",
            self.inner.id(),
            self.inner.budget.snr_db,
            self.inner.capacity_bps / 1e6
        )
    }
}

#[pymodule]
#[pyo3(name = "ntnsim")]
fn ntnsim_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(fspl_db, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j1, m)?)?;
    m.add_function(wrap_pyfunction!(aperture_gain_rel, m)?)?;
    m.add_function(wrap_pyfunction!(slant_range, m)?)?;
    m.add_function(wrap_pyfunction!(propagation_delay, m)?)?;
    m.add_function(wrap_pyfunction!(area_capacity_density, m)?)?;
    m.add_class::<Scenario>()?;
    m.add("BUILTIN_IDS", scenario::BUILTIN_IDS.to_vec())?;
    Ok(())
}
