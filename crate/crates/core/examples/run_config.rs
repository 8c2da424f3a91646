//! Library-level equivalent of `diffusim run`: load a config file (or a
//! preset by name), run it and write the CSV and gnuplot script.
//!
//! ```text
//! cargo run --release --example run_config -- <file.cfg | preset> [out_dir]
//! ```

use std::path::{Path, PathBuf};

use diffusim::scenario::{load_config, presets, run_scenario, DEFAULT_SEED};

fn main() -> diffusim::Result<()> {
    let mut args = std::env::args().skip(1);
    let source = args.next().unwrap_or_else(|| "dct_low_noise".into());
    let out_dir = PathBuf::from(args.next().unwrap_or_else(|| "out".into()));
    let (cfg, name) = if Path::new(&source).exists() {
        let stem = Path::new(&source)
            .file_stem()
            .map_or("scenario".into(), |s| s.to_string_lossy().into_owned());
        (load_config(Path::new(&source), DEFAULT_SEED)?, stem)
    } else {
        (presets::load(&source)?, source.clone())
    };
    print!("{}", cfg.to_config_text());
    let out = run_scenario(&cfg, &out_dir, &name)?;
    let trace = &out.trace;
    println!("\n{:>6} {:>14}", "t", "consensus dB");
    for t in (0..trace.horizon).step_by((trace.horizon / 10).max(1)) {
        println!("{:>6} {:>14.2}", t + 1, trace.consensus_msd_db[t]);
    }
    if trace.floored > 0 {
        println!("{} samples hit the dB floor", trace.floored);
    }
    println!(
        "wrote {} and {}",
        out.csv_path.display(),
        out.plot_path.display()
    );
    Ok(())
}
