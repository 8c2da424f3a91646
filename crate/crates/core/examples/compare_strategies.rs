//! Runs every combination strategy on one preset and prints the consensus
//! and normalized local MSD over the last 10% of the horizon.
//!
//! ```text
//! cargo run --release --example compare_strategies -- [preset] [reps]
//! ```

use diffusim::scenario::{self, presets};
use diffusim::{ScenarioConfig, Strategy};

fn main() -> diffusim::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "time_partial".into());
    let base = presets::load(&preset)?;
    let reps = args
        .next()
        .map(|r| r.parse().expect("reps must be an integer"));
    let base = ScenarioConfig {
        reps: reps.unwrap_or(base.reps),
        ..base
    };

    println!(
        "preset {preset}: N={} L={} rho={} sigma={} T={} reps={}",
        base.n_nodes, base.vec_len, base.obs_prob, base.noise_sigma, base.horizon, base.reps
    );
    println!(
        "{:<24} {:>14} {:>14}",
        "strategy", "consensus dB", "local dB"
    );
    let arms: Vec<(String, ScenarioConfig)> = Strategy::ALL
        .iter()
        .map(|&s| {
            (
                s.name().to_string(),
                ScenarioConfig {
                    strategy: s,
                    ..base.clone()
                },
            )
        })
        .collect();
    let cmp = scenario::compare_arms(&arms)?;
    for (label, trace) in cmp.labels.iter().zip(&cmp.traces) {
        println!(
            "{:<24} {:>14.2} {:>14.2}",
            label,
            trace.tail_consensus_db(0.1),
            trace.tail_local_db(0.1)
        );
    }
    let out = std::path::Path::new("out");
    let (csv, gp) = cmp.write(out, &format!("{preset}_strategies"))?;
    println!("wrote {} and {}", csv.display(), gp.display());
    Ok(())
}
