//! One LMS filter learning a masked target, compared with the predicted
//! steady-state MSD.
//!
//! ```text
//! cargo run --release --example single_node_lms
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffusim::lms::{adapt, draw_measurement, LmsParams};
use diffusim::metrics::{local_msd, to_db};
use diffusim::target::{draw_masks, TargetGenerator, TargetModel};
use diffusim::Transform;

fn main() -> diffusim::Result<()> {
    let len = 32;
    let params = LmsParams::new(0.01, 0.1)?;
    let gen = TargetGenerator::UniformMagnitude { lo: 0.5, hi: 1.5 };
    let t = Transform::dct(len)?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let target = TargetModel::generate(&gen, &t, &mut rng)?;
    let mask = draw_masks(1, len, 0.5, &mut rng)?.remove(0);
    let local = t.apply_mask(&mask, &target.time)?;
    println!("node observes {} of {len} DCT components", mask.count());

    let mut w = vec![0.0; len];
    let mut tail = 0.0;
    let steps = 20_000;
    for step in 1..=steps {
        let m = draw_measurement(&local, &params, &mut rng);
        w = adapt(&w, &m, params.mu)?;
        let msd = local_msd(&w, &local, &mask)?;
        if step > steps - 5_000 {
            tail += msd;
        }
        if step % 2_000 == 0 {
            println!(
                "step {step:>6}: normalized local MSD {:>8.2} dB",
                to_db(msd).value
            );
        }
    }
    let measured = tail / 5_000.0;
    if let Some(per_component) = params.steady_state_msd_per_component(len) {
        // Every filter tap carries the same misadjustment; local MSD divides the
        // total by the number of observed components.
        let predicted = per_component * len as f64 / mask.count() as f64;
        println!(
            "steady state: measured {:.2} dB, predicted {:.2} dB",
            to_db(measured).value,
            to_db(predicted).value
        );
    }
    Ok(())
}
