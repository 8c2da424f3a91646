//! Scenario configuration, Monte Carlo runs, presets and file artifacts.

pub mod config;
pub mod output;
pub mod presets;
pub mod run;

pub use config::{
    load_config, parse_config, parse_config_with_default_seed, Observability, ScenarioConfig,
    DEFAULT_SEED,
};
pub use output::{compare_arms, format_sig9, run_scenario, trace_csv, Comparison, ScenarioOutput};
pub use run::{build_network, run_repetition, run_simulation};
