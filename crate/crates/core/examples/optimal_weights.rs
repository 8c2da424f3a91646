//! Per-component optimal combination weights: the closed form against the
//! dense and Sherman–Morrison solves, and how the weights move with SNR.
//!
//! ```text
//! cargo run --example optimal_weights
//! ```

use diffusim::weights::{
    optimal_weights_closed_form, optimal_weights_direct, optimal_weights_equal_observability,
    optimal_weights_sherman_morrison, subproblem_cost, ComponentProblem,
};

fn main() -> diffusim::Result<()> {
    // Four neighbors; the third does not observe this component.
    let p = ComponentProblem::new(vec![1.0, 0.8, 0.0, 1.2], vec![10.0, 2.0, 50.0, 0.5], 1.0)?;
    let closed = optimal_weights_closed_form(&p);
    let direct = optimal_weights_direct(&p)?;
    let sm = optimal_weights_sherman_morrison(&p)?;
    println!("closed form      {closed:.6?}");
    println!("dense solve      {direct:.6?}");
    println!("Sherman-Morrison {sm:.6?}");
    println!(
        "cost {:.6} (no cooperation would cost {:.6})",
        subproblem_cost(&p, &closed)?,
        p.sigma0_sq
    );

    println!("\nthree observing neighbors with equal SNR: weight vs 1/(m + 1/snr)");
    for snr in [0.1, 1.0, 10.0, 100.0, 1e4] {
        let c = optimal_weights_equal_observability(1.0, &[snr; 3])?;
        println!(
            "  snr {snr:>8}: {:.6} vs {:.6}",
            c[0],
            1.0 / (3.0 + 1.0 / snr)
        );
    }
    Ok(())
}
