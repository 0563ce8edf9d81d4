//! Scenario ingestion, solver-versus-asymptotics sweeps, rate fits and CSV/JSON reports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod curves;
pub mod error;
pub mod fit;
pub mod output;
pub mod scenario;
pub mod verify;

pub use config::{parse_config, parse_config_file, ScenarioConfig, ScenarioKind};
pub use error::{CliError, CliResult};
pub use fit::{fit_rate, RateFit};
pub use scenario::{run_scenario, SweepOutcome, SweepReport};
