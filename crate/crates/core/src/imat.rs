//! Thresholding-based diffusion: support estimation with a decaying
//! threshold and the three-phase combination (local update, diffuse, combine)
//! gated by the outflow gate `eta` and the inflow gate `alpha`.
//!
//! All vectors except the combine output live in the transform domain.

use crate::error::{check_len, Error, Result};
use crate::transforms::{ObservabilityMask, Transform};

/// Threshold level `beta(t) = beta1 exp(-t / tau) + beta0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSchedule {
    pub beta1: f64,
    pub beta0: f64,
    pub tau: f64,
}

impl ThresholdSchedule {
    pub fn new(beta1: f64, beta0: f64, tau: f64) -> Result<Self> {
        if !(beta1 >= 0.0 && beta1.is_finite()) {
            return Err(Error::arg(format!("beta1 must be >= 0, got {beta1}")));
        }
        if !(beta0 >= 0.0 && beta0.is_finite()) {
            return Err(Error::arg(format!("beta0 must be >= 0, got {beta0}")));
        }
        if !(tau > 0.0) {
            return Err(Error::arg(format!("tau must be > 0, got {tau}")));
        }
        Ok(ThresholdSchedule { beta1, beta0, tau })
    }

    /// Constant threshold `beta0`.
    pub fn fixed(beta0: f64) -> Result<Self> {
        Self::new(0.0, beta0, 1.0)
    }

    pub fn level(&self, t: u64) -> f64 {
        threshold_level(self, t)
    }
}

pub fn threshold_level(s: &ThresholdSchedule, t: u64) -> f64 {
    s.beta1 * (-(t as f64) / s.tau).exp() + s.beta0
}

/// Step schedule for the flow gates: `(eta, alpha)` before `switch_time`,
/// `(eta_after, alpha_after)` from `switch_time` on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowGates {
    pub eta: f64,
    pub alpha: f64,
    pub switch_time: u64,
    pub eta_after: f64,
    pub alpha_after: f64,
}

impl FlowGates {
    /// The same gates for the whole run.
    pub fn constant(eta: f64, alpha: f64) -> Self {
        FlowGates {
            eta,
            alpha,
            switch_time: u64::MAX,
            eta_after: eta,
            alpha_after: alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eta", self.eta),
            ("alpha", self.alpha),
            ("eta_after", self.eta_after),
            ("alpha_after", self.alpha_after),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::arg(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// `(eta, alpha)` in effect at step `t`.
    pub fn at(&self, t: u64) -> (f64, f64) {
        if t < self.switch_time {
            (self.eta, self.alpha)
        } else {
            (self.eta_after, self.alpha_after)
        }
    }
}

/// State held by one node between steps.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    /// Time-domain estimate after combination.
    pub omega: Vec<f64>,
    /// Transform-domain diffusion buffer shared with neighbors.
    pub psi: Vec<f64>,
    /// Transform of the most recent adapted estimate.
    pub omega_big: Vec<f64>,
    /// Support estimated from `omega_big`.
    pub support: ObservabilityMask,
}

impl NodeState {
    pub fn zeros(len: usize) -> Self {
        NodeState {
            omega: vec![0.0; len],
            psi: vec![0.0; len],
            omega_big: vec![0.0; len],
            support: ObservabilityMask::empty(len),
        }
    }
}

/// Indicator of `|x_j| > beta` (strict).
pub fn estimate_support(x: &[f64], beta: f64) -> ObservabilityMask {
    ObservabilityMask::new(x.iter().map(|v| v.abs() > beta).collect())
}

/// On-support components of `psi` move toward `omega_big` by `eta`; the rest stay.
pub fn local_update(
    psi: &[f64],
    omega_big: &[f64],
    support: &ObservabilityMask,
    eta: f64,
) -> Result<Vec<f64>> {
    check_len("omega_big", omega_big.len(), psi.len())?;
    check_len("support", support.len(), psi.len())?;
    Ok(psi
        .iter()
        .zip(omega_big)
        .zip(support.iter())
        .map(|((&p, &o), on)| if on { (1.0 - eta) * p + eta * o } else { p })
        .collect())
}

/// Averages, per component, the buffers of the neighbors that flag it
/// active. Components no neighbor flags keep `own_psi`.
///
/// `neighbors` must include the node itself.
pub fn diffuse(neighbors: &[(&[f64], &ObservabilityMask)], own_psi: &[f64]) -> Result<Vec<f64>> {
    if neighbors.is_empty() {
        return Err(Error::arg("diffuse needs a non-empty neighborhood"));
    }
    let len = own_psi.len();
    for (psi, mask) in neighbors {
        check_len("neighbor psi", psi.len(), len)?;
        check_len("neighbor support", mask.len(), len)?;
    }
    let mut sum = vec![0.0; len];
    let mut count = vec![0u32; len];
    for (psi, mask) in neighbors {
        for (j, on) in mask.iter().enumerate() {
            if on {
                sum[j] += psi[j];
                count[j] += 1;
            }
        }
    }
    Ok(sum
        .into_iter()
        .zip(count)
        .zip(own_psi)
        .map(|((s, k), &own)| if k == 0 { own } else { s / k as f64 })
        .collect())
}

/// `T' [ D ((1 - alpha) psi + alpha Omega) + (I - D) Omega ]`.
pub fn combine(
    psi: &[f64],
    omega_big: &[f64],
    support: &ObservabilityMask,
    alpha: f64,
    transform: &Transform,
) -> Result<Vec<f64>> {
    check_len("psi", psi.len(), transform.size())?;
    check_len("omega_big", omega_big.len(), transform.size())?;
    check_len("support", support.len(), transform.size())?;
    let blended: Vec<f64> = psi
        .iter()
        .zip(omega_big)
        .zip(support.iter())
        .map(|((&p, &o), on)| if on { (1.0 - alpha) * p + alpha * o } else { o })
        .collect();
    transform.inverse(&blended)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        let s = ThresholdSchedule::new(2.0, 0.25, 500.0).unwrap();
        assert_eq!(threshold_level(&s, 0), 2.25);
        assert!((threshold_level(&s, 1_000_000) - 0.25).abs() < 1e-12);
        assert!((threshold_level(&s, 500) - (2.0 / std::f64::consts::E + 0.25)).abs() < 1e-15);
        assert!(ThresholdSchedule::new(1.0, 0.0, 0.0).is_err());
        assert_eq!(ThresholdSchedule::fixed(0.3).unwrap().level(7), 0.3);
    }

    #[test]
    fn support_examples() {
        let m = estimate_support(&[0.9, -0.2, 0.5], 0.4);
        assert_eq!(m.bits(), &[true, false, true]);
        assert_eq!(estimate_support(&[0.1, -3.0], 0.0).count(), 2);
        assert_eq!(estimate_support(&[0.4, -0.4], 0.4).count(), 0);
    }

    #[test]
    fn local_update_examples() {
        let psi = [2.0, 2.0];
        let full = ObservabilityMask::full(2);
        assert_eq!(
            local_update(&psi, &[4.0, 4.0], &full, 0.0).unwrap(),
            psi.to_vec()
        );
        assert_eq!(
            local_update(&psi, &[4.0, 5.0], &full, 1.0).unwrap(),
            vec![4.0, 5.0]
        );
        let m = ObservabilityMask::new(vec![true, false]);
        assert_eq!(
            local_update(&psi, &[4.0, 4.0], &m, 0.5).unwrap(),
            vec![3.0, 2.0]
        );
        assert!(local_update(&psi, &[1.0], &m, 0.5).is_err());
    }

    #[test]
    fn diffuse_examples() {
        let on = ObservabilityMask::new(vec![true, false]);
        let a = [1.0, 5.0];
        let b = [3.0, 6.0];
        let own = [0.0, 7.0];
        let out = diffuse(&[(&a, &on), (&b, &on)], &own).unwrap();
        assert_eq!(out, vec![2.0, 7.0]);

        let full = ObservabilityMask::full(2);
        assert_eq!(diffuse(&[(&a, &full)], &a).unwrap(), a.to_vec());
        assert!(diffuse(&[], &own).is_err());
    }

    #[test]
    fn combine_examples() {
        let t = Transform::dct(4).unwrap();
        let psi = [1.0, -2.0, 0.5, 3.0];
        let omega_big = [0.2, 0.4, -0.6, 0.8];
        let local = t.inverse(&omega_big).unwrap();

        let none = ObservabilityMask::empty(4);
        assert_eq!(combine(&psi, &omega_big, &none, 0.3, &t).unwrap(), local);
        let full = ObservabilityMask::full(4);
        assert_eq!(combine(&psi, &omega_big, &full, 1.0, &t).unwrap(), local);
        assert_eq!(
            combine(&psi, &omega_big, &full, 0.0, &t).unwrap(),
            t.inverse(&psi).unwrap()
        );
    }

    #[test]
    fn gates_switch_once() {
        let g = FlowGates {
            eta: 0.5,
            alpha: 0.0,
            switch_time: 10,
            eta_after: 0.0,
            alpha_after: 0.5,
        };
        assert_eq!(g.at(9), (0.5, 0.0));
        assert_eq!(g.at(10), (0.0, 0.5));
        assert!(g.validate().is_ok());
        assert!(FlowGates { eta: 1.5, ..g }.validate().is_err());
    }
}
