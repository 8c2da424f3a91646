//! Scalar (component-blind) combination weights for a neighborhood with
//! partial observations, built by successive rank-one updates.
//!
//! ```text
//! cargo run --example conventional_weights
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use diffusim::target::draw_masks;
use diffusim::weights::{
    conventional_inverse, conventional_scalar_weights, cooperation_matrix,
    per_component_gain_matrices, ScalarWeightProblem,
};
use diffusim::ObservabilityMask;

fn main() -> diffusim::Result<()> {
    let (m, len, snr) = (4, 16, 20.0);
    let masks = draw_masks(m, len, 0.5, &mut ChaCha8Rng::seed_from_u64(3))?;
    for (k, mask) in masks.iter().enumerate() {
        let row: String = mask.iter().map(|b| if b { '#' } else { '.' }).collect();
        println!("neighbor {k}: {row}");
    }
    let refs: Vec<&ObservabilityMask> = masks.iter().collect();
    let p = ScalarWeightProblem::from_masks(&refs, vec![snr; m])?;
    println!(
        "\ncomponents shared between neighbors:\n{}",
        cooperation_matrix(&p)
    );

    let s = conventional_inverse(&p)?;
    let residual =
        (p.regularizer() + cooperation_matrix(&p)) * &s - nalgebra::DMatrix::identity(m, m);
    println!("inverse residual {:.2e}", residual.amax());
    println!("scalar weights {:.4?}", conventional_scalar_weights(&p)?);

    // The per-component optimum for comparison.
    let gains = per_component_gain_matrices(&refs, &vec![snr; m])?;
    println!("\nper-component weights (rows: neighbors, columns: components)");
    for g in &gains {
        let row: Vec<String> = g.iter().map(|v| format!("{v:.2}")).collect();
        println!("  {}", row.join(" "));
    }
    Ok(())
}
