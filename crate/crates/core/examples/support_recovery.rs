//! Adaptive thresholding on one network: tracks the decaying threshold, the
//! number of wrongly estimated support entries and the consensus MSD.
//!
//! ```text
//! cargo run --release --example support_recovery -- [preset] [rep]
//! ```

use diffusim::metrics::to_db;
use diffusim::scenario::{build_network, presets};
use diffusim::{ScenarioConfig, Strategy};

fn main() -> diffusim::Result<()> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "time_partial".into());
    let rep: usize = args.next().map_or(0, |v| v.parse().expect("rep"));
    let cfg = ScenarioConfig {
        strategy: Strategy::ImatAdaptive,
        noise_sigma: 1e-3,
        ..presets::load(&preset)?
    };
    let mut net = build_network(&cfg, rep)?;
    let observed: usize = net.masks().iter().map(|m| m.count()).sum();
    println!(
        "{preset} rep {rep}: {} nodes observe {observed} of {} components in total",
        cfg.n_nodes,
        cfg.n_nodes * cfg.vec_len
    );
    println!(
        "{:>6} {:>9} {:>10} {:>14}",
        "t", "beta", "mismatch", "consensus dB"
    );
    for t in 1..=cfg.horizon {
        net.step()?;
        if t % 250 == 0 {
            let mismatched: usize = net
                .states()
                .iter()
                .zip(net.masks())
                .map(|(s, m)| {
                    s.support
                        .iter()
                        .zip(m.iter())
                        .filter(|(a, b)| a != b)
                        .count()
                })
                .sum();
            println!(
                "{t:>6} {:>9.4} {mismatched:>10} {:>14.2}",
                cfg.schedule.level(t as u64),
                to_db(net.consensus_msd()).value
            );
        }
    }
    Ok(())
}
