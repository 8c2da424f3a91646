//! Mean-square deviation metrics.
//!
//! Local MSD compares a node's estimate with its own masked target and is
//! rescaled by `L / sum_j D(j)` so nodes with different observability are
//! comparable. Consensus MSD compares every node with the full target.
//! Repetitions are averaged in linear scale and only then converted to dB.

use crate::error::{check_len, Error, Result};
use crate::transforms::ObservabilityMask;

/// Floor used by [`to_db`] for non-positive inputs.
pub const DB_FLOOR: f64 = -180.0;

fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Normalized local MSD: `||estimate - masked_target||^2 / sum_j D(j)`.
pub fn local_msd(estimate: &[f64], masked_target: &[f64], mask: &ObservabilityMask) -> Result<f64> {
    check_len("masked target", masked_target.len(), estimate.len())?;
    check_len("mask", mask.len(), estimate.len())?;
    let observed = mask.count();
    if observed == 0 {
        return Err(Error::arg(
            "local MSD normalization undefined for an all-zero mask",
        ));
    }
    let len = estimate.len() as f64;
    let factor = len / observed as f64;
    Ok(factor * squared_distance(estimate, masked_target) / len)
}

/// `(1/N) sum_i (1/L) ||w_i - w_opt||^2`.
pub fn consensus_msd<V: AsRef<[f64]>>(estimates: &[V], target: &[f64]) -> Result<f64> {
    if estimates.is_empty() {
        return Err(Error::arg("consensus MSD needs at least one estimate"));
    }
    let len = target.len() as f64;
    let mut total = 0.0;
    for e in estimates {
        let e = e.as_ref();
        check_len("estimate", e.len(), target.len())?;
        total += squared_distance(e, target) / len;
    }
    Ok(total / estimates.len() as f64)
}

/// A dB value together with whether the input had to be clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decibels {
    pub value: f64,
    pub floored: bool,
}

/// `10 log10(x)`; non-positive (or NaN) input maps to [`DB_FLOOR`] with the flag set.
pub fn to_db(x: f64) -> Decibels {
    if x > 0.0 {
        let value = 10.0 * x.log10();
        if value < DB_FLOOR {
            return Decibels {
                value: DB_FLOOR,
                floored: true,
            };
        }
        Decibels {
            value,
            floored: false,
        }
    } else {
        Decibels {
            value: DB_FLOOR,
            floored: true,
        }
    }
}

/// Linear-scale MSD series of a single repetition.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearTrace {
    /// `local[i][t]`, node-major.
    pub local: Vec<Vec<f64>>,
    pub consensus: Vec<f64>,
}

impl LinearTrace {
    pub fn new(nodes: usize, horizon: usize) -> Self {
        LinearTrace {
            local: vec![Vec::with_capacity(horizon); nodes],
            consensus: Vec::with_capacity(horizon),
        }
    }

    pub fn horizon(&self) -> usize {
        self.consensus.len()
    }

    pub fn nodes(&self) -> usize {
        self.local.len()
    }

    fn same_shape(&self, other: &LinearTrace) -> bool {
        self.horizon() == other.horizon()
            && self.nodes() == other.nodes()
            && self
                .local
                .iter()
                .zip(&other.local)
                .all(|(a, b)| a.len() == b.len())
    }
}

/// Per-timestep MSD in dB, averaged over Monte Carlo repetitions.
#[derive(Debug, Clone, PartialEq)]
pub struct MsdTrace {
    pub horizon: usize,
    /// `local_msd_db[i][t]`, node-major.
    pub local_msd_db: Vec<Vec<f64>>,
    pub consensus_msd_db: Vec<f64>,
    pub reps: usize,
    /// Number of values that hit [`DB_FLOOR`].
    pub floored: usize,
}

impl MsdTrace {
    pub fn nodes(&self) -> usize {
        self.local_msd_db.len()
    }

    /// Mean of the consensus dB values over the last `fraction` of the horizon.
    pub fn tail_consensus_db(&self, fraction: f64) -> f64 {
        tail_mean(&self.consensus_msd_db, fraction)
    }

    /// Mean over nodes and the last `fraction` of the horizon of the local dB values.
    pub fn tail_local_db(&self, fraction: f64) -> f64 {
        let per_node: Vec<f64> = self
            .local_msd_db
            .iter()
            .map(|s| tail_mean(s, fraction))
            .collect();
        per_node.iter().sum::<f64>() / per_node.len().max(1) as f64
    }
}

fn tail_mean(series: &[f64], fraction: f64) -> f64 {
    if series.is_empty() {
        return f64::NAN;
    }
    let n = ((series.len() as f64 * fraction).ceil() as usize).clamp(1, series.len());
    series[series.len() - n..].iter().sum::<f64>() / n as f64
}

/// Averages repetitions in linear scale and converts to dB.
pub fn average_traces(traces: &[LinearTrace]) -> Result<MsdTrace> {
    let first = traces
        .first()
        .ok_or_else(|| Error::arg("cannot average an empty list of traces"))?;
    if let Some(k) = traces.iter().position(|t| !t.same_shape(first)) {
        return Err(Error::arg(format!(
            "trace {k} has a different shape than trace 0"
        )));
    }
    let reps = traces.len();
    let mut floored = 0usize;
    let mut mean_db = |pick: &dyn Fn(&LinearTrace) -> f64| {
        let sum: f64 = traces.iter().map(pick).sum();
        let db = to_db(sum / reps as f64);
        floored += db.floored as usize;
        db.value
    };
    let horizon = first.horizon();
    let consensus_msd_db = (0..horizon)
        .map(|t| mean_db(&|tr| tr.consensus[t]))
        .collect();
    let local_msd_db = (0..first.nodes())
        .map(|i| {
            (0..horizon)
                .map(|t| mean_db(&|tr| tr.local[i][t]))
                .collect()
        })
        .collect();
    Ok(MsdTrace {
        horizon,
        local_msd_db,
        consensus_msd_db,
        reps,
        floored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_msd_examples() {
        let m = ObservabilityMask::new(vec![true, false]);
        assert_eq!(local_msd(&[1.0, 0.0], &[1.0, 0.0], &m).unwrap(), 0.0);
        let v = local_msd(&[0.1, 0.0], &[0.0, 0.0], &m).unwrap();
        assert!((v - 0.01).abs() < 1e-15);

        let full = ObservabilityMask::full(2);
        let plain = local_msd(&[1.0, 2.0], &[0.0, 0.0], &full).unwrap();
        assert!((plain - 2.5).abs() < 1e-15);

        let none = ObservabilityMask::empty(2);
        assert!(matches!(
            local_msd(&[0.0; 2], &[0.0; 2], &none),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn consensus_examples() {
        let target = [1.0, -1.0, 2.0];
        assert_eq!(
            consensus_msd(&[target.to_vec(), target.to_vec()], &target).unwrap(),
            0.0
        );
        let one = consensus_msd(&[vec![0.0; 3]], &target).unwrap();
        assert!((one - 2.0).abs() < 1e-15);
        assert!(consensus_msd::<Vec<f64>>(&[], &target).is_err());
    }

    #[test]
    fn db_examples() {
        assert_eq!(
            to_db(1.0),
            Decibels {
                value: 0.0,
                floored: false
            }
        );
        assert!((to_db(0.01).value + 20.0).abs() < 1e-12);
        assert_eq!(
            to_db(0.0),
            Decibels {
                value: -180.0,
                floored: true
            }
        );
        assert!(to_db(-1.0).floored);
    }

    fn trace(v: f64) -> LinearTrace {
        LinearTrace {
            local: vec![vec![v, 2.0 * v]],
            consensus: vec![v, v / 2.0],
        }
    }

    #[test]
    fn averaging() {
        let one = average_traces(&[trace(0.5)]).unwrap();
        assert_eq!(one.consensus_msd_db[0], to_db(0.5).value);
        let two = average_traces(&[trace(0.5), trace(0.5)]).unwrap();
        assert_eq!(one.consensus_msd_db, two.consensus_msd_db);
        assert_eq!(one.local_msd_db, two.local_msd_db);
        assert_eq!(two.reps, 2);

        let mixed = average_traces(&[trace(0.2), trace(0.6)]).unwrap();
        assert!((mixed.consensus_msd_db[0] - 10.0 * 0.4f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn averaging_rejects_shape_mismatch() {
        let mut other = trace(1.0);
        other.consensus.push(1.0);
        assert!(matches!(
            average_traces(&[trace(1.0), other]),
            Err(Error::Argument(_))
        ));
        assert!(average_traces(&[]).is_err());
    }

    #[test]
    fn zero_error_is_floored_and_counted() {
        let t = average_traces(&[trace(0.0)]).unwrap();
        assert_eq!(t.consensus_msd_db, vec![DB_FLOOR, DB_FLOOR]);
        assert_eq!(t.floored, 4);
    }
}
