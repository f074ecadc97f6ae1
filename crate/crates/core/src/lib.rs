//! Link-budget calculator and discrete-event simulator for a 5G NR
//! satellite downlink with a regenerative (gNB-on-board) payload.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: slant range, propagation delay, beam footprint
//! - [`antenna`]: circular-aperture pattern and Bessel J1
//! - [`linkbudget`]: FSPL, G/T, SNR
//! - [`phy`]: numerology and SNR-to-capacity mapping
//! - [`scenario`]: presets, config files, resolution
//! - [`engine`]: the event-driven packet simulation
//! - [`report`]: sweep CSV, calibration checks, area capacity density

pub mod antenna;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod linkbudget;
pub mod phy;
pub mod report;
pub mod scenario;

pub use engine::{run, sweep, RunMetrics, RunParams};
pub use error::{Error, Result};
pub use scenario::{builtin, load, resolve, ResolvedScenario, ScenarioConfig};
