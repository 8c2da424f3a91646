//! Consensus MSD curves for conventional averaging, fixed-threshold and
//! adaptive-threshold diffusion under partial and full observation. Writes
//! `out/figure_partial.csv`, `out/figure_full.csv` and gnuplot scripts.
//!
//! The fixed-threshold arm runs with `alpha = 1`: a fixed threshold keeps
//! the false supports it picks up early, and blending them into the local
//! estimate would only show that artefact.
//!
//! ```text
//! cargo run --release --example figure_partial_vs_full -- [reps]
//! ```

use std::path::Path;

use diffusim::scenario::{compare_arms, presets};
use diffusim::{FlowGates, ScenarioConfig, Strategy};

fn main() -> diffusim::Result<()> {
    let reps: Option<usize> = std::env::args().nth(1).map(|r| r.parse().expect("reps"));
    for preset in ["time_partial", "time_full"] {
        let base = presets::load(preset)?;
        let base = ScenarioConfig {
            reps: reps.unwrap_or(base.reps),
            ..base
        };
        let fixed = ScenarioConfig {
            strategy: Strategy::ImatFixedThreshold,
            gates: FlowGates {
                alpha: 1.0,
                alpha_after: 1.0,
                ..base.gates
            },
            ..base.clone()
        };
        let arms = vec![
            (
                "conventional".to_string(),
                ScenarioConfig {
                    strategy: Strategy::ConventionalAveraging,
                    ..base.clone()
                },
            ),
            ("fixed_threshold".to_string(), fixed),
            (
                "adaptive_threshold".to_string(),
                ScenarioConfig {
                    strategy: Strategy::ImatAdaptive,
                    ..base.clone()
                },
            ),
        ];
        let cmp = compare_arms(&arms)?;
        println!(
            "{preset} ({} reps), consensus MSD over the last 10%:",
            base.reps
        );
        for (label, trace) in cmp.labels.iter().zip(&cmp.traces) {
            println!("  {label:<20} {:>8.2} dB", trace.tail_consensus_db(0.1));
        }
        let name = preset.replace("time_", "figure_");
        let (csv, _) = cmp.write(Path::new("out"), &name)?;
        println!("  wrote {}", csv.display());
    }
    Ok(())
}
