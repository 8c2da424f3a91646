//! Per-node LMS measurement and adaptation.
//!
//! ```text
//! d(t) = a(t)' M w_opt + v(t)       measurement, a(t) ~ N(0, I), v(t) ~ N(0, sigma^2)
//! e(t) = d(t) - a(t)' w(t-1)        a-priori error
//! w(t) = w(t-1) + mu e(t) a(t)      adaptation
//! ```

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_len, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmsParams {
    pub mu: f64,
    pub noise_sigma: f64,
}

impl LmsParams {
    pub fn new(mu: f64, noise_sigma: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::arg(format!(
                "step size mu must be positive, got {mu}"
            )));
        }
        if !(noise_sigma >= 0.0 && noise_sigma.is_finite()) {
            return Err(Error::arg(format!(
                "noise sigma must be non-negative, got {noise_sigma}"
            )));
        }
        Ok(LmsParams { mu, noise_sigma })
    }

    /// Approximate steady-state mean-square deviation per component of a
    /// single LMS filter with white Gaussian regressors of length `len`:
    /// `mu sigma^2 / (2 - mu (len + 2))`. Returns `None` outside the
    /// mean-square stability range.
    pub fn steady_state_msd_per_component(&self, len: usize) -> Option<f64> {
        let denom = 2.0 - self.mu * (len as f64 + 2.0);
        (denom > 0.0).then(|| self.mu * self.noise_sigma * self.noise_sigma / denom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub regressor: Vec<f64>,
    pub observed: f64,
}

/// Draws one regressor and the noisy scalar observation of `masked_target`.
pub fn draw_measurement<R: Rng + ?Sized>(
    masked_target: &[f64],
    params: &LmsParams,
    rng: &mut R,
) -> Measurement {
    let regressor: Vec<f64> = (0..masked_target.len())
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    let clean = dot(&regressor, masked_target);
    // The noise draw is skipped when sigma is zero so noiseless runs stay exact.
    let noise = if params.noise_sigma > 0.0 {
        params.noise_sigma * rng.sample::<f64, _>(StandardNormal)
    } else {
        0.0
    };
    Measurement {
        regressor,
        observed: clean + noise,
    }
}

/// One LMS step: `estimate + mu (d - a' estimate) a`.
pub fn adapt(estimate: &[f64], meas: &Measurement, mu: f64) -> Result<Vec<f64>> {
    check_len("regressor", meas.regressor.len(), estimate.len())?;
    let mut out = estimate.to_vec();
    adapt_in_place(&mut out, meas, mu);
    Ok(out)
}

pub(crate) fn adapt_in_place(estimate: &mut [f64], meas: &Measurement, mu: f64) {
    let err = meas.observed - dot(&meas.regressor, estimate);
    let gain = mu * err;
    if gain == 0.0 {
        return;
    }
    for (w, a) in estimate.iter_mut().zip(&meas.regressor) {
        *w += gain * a;
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
