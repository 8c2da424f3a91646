//! Ground-truth target vectors and per-node observability masks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::transforms::{ObservabilityMask, Transform};

/// Distribution of the transform-domain target coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TargetGenerator {
    /// Magnitude uniform on `[lo, hi]`, sign uniform on `{-1, +1}`.
    UniformMagnitude { lo: f64, hi: f64 },
}

impl TargetGenerator {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TargetGenerator::UniformMagnitude { lo, hi } => {
                if !(lo >= 0.0 && hi >= lo && hi.is_finite()) {
                    return Err(Error::arg(format!(
                        "uniform_magnitude bounds must satisfy 0 <= lo <= hi, got ({lo}, {hi})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Per-component variance of the coefficients.
    pub fn variance(&self) -> f64 {
        match *self {
            TargetGenerator::UniformMagnitude { lo, hi } => {
                if hi == lo {
                    lo * lo
                } else {
                    (hi.powi(3) - lo.powi(3)) / (3.0 * (hi - lo))
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            TargetGenerator::UniformMagnitude { lo, hi } => {
                let mag = if hi > lo {
                    rng.random_range(lo..=hi)
                } else {
                    lo
                };
                if rng.random::<bool>() {
                    mag
                } else {
                    -mag
                }
            }
        }
    }
}

/// The target `w_opt` and its transform-domain coefficients `T w_opt`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetModel {
    pub time: Vec<f64>,
    pub coeffs: Vec<f64>,
}

impl TargetModel {
    pub fn generate<R: Rng + ?Sized>(
        generator: &TargetGenerator,
        transform: &Transform,
        rng: &mut R,
    ) -> Result<Self> {
        generator.validate()?;
        let coeffs: Vec<f64> = (0..transform.size())
            .map(|_| generator.sample(rng))
            .collect();
        let time = transform.inverse(&coeffs)?;
        Ok(TargetModel { time, coeffs })
    }

    pub fn from_time(time: Vec<f64>, transform: &Transform) -> Result<Self> {
        let coeffs = transform.forward(&time)?;
        Ok(TargetModel { time, coeffs })
    }

    pub fn len(&self) -> usize {
        self.time.len()
    }

    pub fn is_empty(&self) -> bool {
        self.time.is_empty()
    }
}

/// One Bernoulli(`rho`) mask per node.
pub fn draw_masks<R: Rng + ?Sized>(
    nodes: usize,
    len: usize,
    rho: f64,
    rng: &mut R,
) -> Result<Vec<ObservabilityMask>> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::arg(format!(
            "observability probability {rho} outside [0, 1]"
        )));
    }
    Ok((0..nodes)
        .map(|_| ObservabilityMask::new((0..len).map(|_| rng.random::<f64>() < rho).collect()))
        .collect())
}
