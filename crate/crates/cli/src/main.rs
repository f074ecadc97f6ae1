use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ntnsim::engine::{self, RunParams};
use ntnsim::report::{self, SweepReport, SweepRow};
use ntnsim::scenario::{self, parse_override, ScenarioConfig, BUILTIN_IDS};
use ntnsim::{Error, ResolvedScenario};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ntnsim", version, about = "5G NR satellite downlink link budget and packet simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check preset link budgets against the reference FSPL/SNR values.
    Calibrate {
        /// Check every built-in preset (default when no --scenario is given).
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Print the full SNR decomposition for a scenario.
    Budget {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Write the budget as CSV to this file instead of a table to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate one source rate.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Source rate in Mbit/s.
        #[arg(long)]
        rate: f64,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate a list of source rates.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Comma-separated source rates in Mbit/s.
        #[arg(long, value_delimiter = ',', default_value = "1,100,250,500,750,1000,1500")]
        rates: Vec<f64>,
        #[command(flatten)]
        sim: SimArgs,
        /// Number of sweep points simulated concurrently.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Preset id (sc1, sc4, sc6, sc9) or path to a config file. Repeatable.
    #[arg(long)]
    scenario: Vec<String>,
    /// Override a config key, e.g. --set backhaul_delay_ms=2. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct SimArgs {
    /// Simulated time in seconds.
    #[arg(long, default_value_t = engine::DEFAULT_DURATION_S)]
    duration: f64,
    /// Initial seconds excluded from metrics.
    #[arg(long, default_value_t = engine::DEFAULT_WARMUP_S)]
    warmup: f64,
    /// Application payload per packet, bytes.
    #[arg(long = "packet-size", default_value_t = engine::DEFAULT_PACKET_SIZE_BYTES)]
    packet_size: u32,
}

impl SimArgs {
    fn params(&self, rate_mbps: f64) -> RunParams {
        RunParams {
            duration_s: self.duration,
            warmup_s: self.warmup,
            packet_size_bytes: self.packet_size,
            ..RunParams::new(rate_mbps * 1e6)
        }
    }
}

impl ScenarioArgs {
    fn configs(&self, default_all: bool) -> Result<Vec<ScenarioConfig>, Error> {
        let overrides = self
            .overrides
            .iter()
            .map(|s| parse_override(s))
            .collect::<Result<Vec<_>, _>>()?;
        let names: Vec<String> = if self.scenario.is_empty() && default_all {
            BUILTIN_IDS.iter().map(|s| s.to_string()).collect()
        } else {
            self.scenario.clone()
        };
        if names.is_empty() {
            return Err(Error::Config("--scenario is required".into()));
        }
        names.iter().map(|n| load_scenario(n, &overrides)).collect()
    }

    fn resolved(&self, default_all: bool) -> Result<Vec<ResolvedScenario>, Error> {
        self.configs(default_all)?
            .iter()
            .map(scenario::resolve)
            .collect()
    }
}

fn load_scenario(name: &str, overrides: &[(String, String)]) -> Result<ScenarioConfig, Error> {
    match scenario::builtin_text(name) {
        Ok(text) => ScenarioConfig::from_str_with_overrides(text, overrides),
        Err(not_found) => {
            if Path::new(name).is_file() {
                scenario::load_with_overrides(name, overrides)
            } else {
                Err(not_found)
            }
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Calibrate { all, scenario } => {
            if all && !scenario.scenario.is_empty() {
                return Err(Error::Config("use either --all or --scenario".into()));
            }
            let mut ok = true;
            for r in scenario.resolved(true)? {
                let rep = report::validate_calibration(&r)?;
                ok &= rep.passed();
                println!("{}", rep.summary_line());
            }
            Ok(if ok { 0 } else { EXIT_FAILURE })
        }
        Command::Budget { scenario, out } => {
            let mut text = String::new();
            for r in scenario.resolved(false)? {
                if out.is_some() {
                    text.push_str(&r.budget.to_csv());
                } else {
                    text.push_str(&r.budget.to_text_table(r.id()));
                    text.push_str(&format!(
                        "{:<20} {:>14.4}  Mbit/s\n{:<20} {:>14.4}  ms\n",
                        "capacity",
                        r.capacity_bps / 1e6,
                        "one_way_delay",
                        r.one_way_delay_s * 1e3
                    ));
                }
            }
            emit(out.as_deref(), &text)?;
            Ok(0)
        }
        Command::Run {
            scenario,
            rate,
            sim,
            out,
        } => {
            let mut reports = Vec::new();
            for r in scenario.resolved(false)? {
                let m = engine::run(&r, &sim.params(rate))?;
                reports.push(SweepReport::new(r.id(), vec![SweepRow::from_metrics(rate * 1e6, &m)]));
            }
            emit(out.as_deref(), &report::to_csv_string(&reports))?;
            Ok(0)
        }
        Command::Sweep {
            scenario,
            rates,
            sim,
            parallel,
            out,
        } => {
            let rates_bps: Vec<f64> = rates.iter().map(|r| r * 1e6).collect();
            let mut reports = Vec::new();
            for r in scenario.resolved(false)? {
                let results = engine::sweep(&r, &rates_bps, &sim.params(1.0), parallel)?;
                reports.push(SweepReport::from_sweep(r.id(), &results));
            }
            emit(out.as_deref(), &report::to_csv_string(&reports))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("ntnsim: {e}");
            ExitCode::from(match e {
                Error::NotFound(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            })
        }
    }
}
