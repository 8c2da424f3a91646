//! Orthonormal DCT and transform-domain observability masks.
//!
//! ```text
//! cargo run --example dct_masks
//! ```

use diffusim::{ObservabilityMask, Transform};

fn main() -> diffusim::Result<()> {
    let t = Transform::dct(8)?;
    let x = [1.0, 2.0, 3.0, 5.0, 8.0, 5.0, 3.0, 0.0];
    let coeffs = t.forward(&x)?;
    println!("x       = {x:?}");
    println!("T x     = {:?}", rounded(&coeffs));

    let energy = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>();
    println!("energy  {:.12} vs {:.12}", energy(&x), energy(&coeffs));

    // A node that only sees the three lowest frequencies.
    let mask = ObservabilityMask::new((0..8).map(|j| j < 3).collect());
    let seen = t.apply_mask(&mask, &x)?;
    println!("mask    = {:?}", mask.indicators());
    println!("M x     = {:?}", rounded(&seen));
    println!("M M x   = {:?}", rounded(&t.apply_mask(&mask, &seen)?));

    let back = t.inverse(&coeffs)?;
    let err = x
        .iter()
        .zip(&back)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    println!("round-trip error {err:.2e}");
    Ok(())
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|a| (a * 1e6).round() / 1e6).collect()
}
