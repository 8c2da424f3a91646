//! Command-line driver.
//!
//! ```text
//! diffusim run <config> [--seed N] [--reps R] [--out DIR]
//! diffusim compare <config>... [--seed N] [--reps R] [--out DIR]
//! diffusim presets list
//! diffusim presets emit <name>
//! ```
//!
//! Seed precedence: `--seed`, then the config's `seed` key, then the
//! `DIFFUSIM_SEED` environment variable. Exit codes: 0 ok, 2 configuration
//! error, 3 numeric error, 1 anything else.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diffusim::scenario::{self, presets, ScenarioConfig, DEFAULT_SEED};
use diffusim::Error;

const SEED_ENV: &str = "DIFFUSIM_SEED";

#[derive(Parser)]
#[command(
    name = "diffusim",
    version,
    about = "Diffusion-LMS simulator with partial observations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write <stem>.csv and <stem>.gp
    Run {
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run several scenarios and write an aligned consensus comparison
    Compare {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Inspect the built-in presets
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// List preset names
    List,
    /// Print a preset's config file to stdout
    Emit { name: String },
}

#[derive(Args)]
struct Overrides {
    /// Base seed (overrides the config file)
    #[arg(long)]
    seed: Option<u64>,
    /// Number of Monte Carlo repetitions
    #[arg(long)]
    reps: Option<usize>,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

impl Overrides {
    fn load(&self, path: &Path) -> diffusim::Result<ScenarioConfig> {
        let fallback = match std::env::var(SEED_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| Error::Config {
                key: SEED_ENV.into(),
                message: format!("cannot parse `{v}` as a 64-bit seed"),
            })?,
            Err(_) => DEFAULT_SEED,
        };
        let mut cfg = scenario::load_config(path, fallback)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(reps) = self.reps {
            cfg.reps = reps;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".into())
}

fn execute(cli: Cli) -> diffusim::Result<()> {
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = overrides.load(&config)?;
            let name = stem(&config);
            let out = scenario::run_scenario(&cfg, &overrides.out, &name)?;
            println!(
                "{name}: strategy={} reps={} final consensus MSD {:.2} dB (last 10%: {:.2} dB)",
                cfg.strategy,
                cfg.reps,
                out.trace
                    .consensus_msd_db
                    .last()
                    .copied()
                    .unwrap_or(f64::NAN),
                out.trace.tail_consensus_db(0.1),
            );
            println!("wrote {}", out.csv_path.display());
            println!("wrote {}", out.plot_path.display());
        }
        Command::Compare { configs, overrides } => {
            let arms = configs
                .iter()
                .map(|p| Ok((stem(p), overrides.load(p)?)))
                .collect::<diffusim::Result<Vec<_>>>()?;
            let cmp = scenario::compare_arms(&arms)?;
            for (label, trace) in cmp.labels.iter().zip(&cmp.traces) {
                println!(
                    "{label}: last-10% consensus MSD {:.2} dB",
                    trace.tail_consensus_db(0.1)
                );
            }
            let (csv, gp) = cmp.write(&overrides.out, "comparison")?;
            println!("wrote {}", csv.display());
            println!("wrote {}", gp.display());
        }
        Command::Presets { action } => match action {
            PresetAction::List => {
                for p in presets::PRESETS {
                    println!("{:<16} {}", p.name, p.description);
                }
            }
            PresetAction::Emit { name } => print!("{}", presets::find(&name)?.text),
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config { .. } | Error::Argument(_) => 2,
                Error::Numeric(_) | Error::TopologyExhausted { .. } => 3,
                Error::Io(_) => 1,
            })
        }
    }
}
