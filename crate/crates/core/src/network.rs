//! Synchronous-round simulation of one network under one combination strategy.
//!
//! Each step runs, for every node, LMS adaptation of the time-domain
//! estimate against the node's masked target, then the strategy-specific
//! combination. Exchanges read a snapshot taken after every node finished
//! its local phase, so the node processing order never matters.
//!
//! For the thresholding strategies a node flags a component for sharing when
//! either its own transform-domain estimate or its diffusion buffer exceeds
//! the current threshold. The second condition lets values received from
//! neighbors travel further than one hop.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, Error, Result};
use crate::imat::{self, FlowGates, NodeState, ThresholdSchedule};
use crate::lms::{self, LmsParams};
use crate::metrics::{self, LinearTrace};
use crate::target::TargetModel;
use crate::topology::NetworkGraph;
use crate::transforms::{ObservabilityMask, Transform};
use crate::weights;

/// Lower bound on the estimation-error variance used for the oracle SNRs,
/// relative to the target variance.
const ORACLE_MIN_ERROR_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Classical diffusion LMS: uniform `1/|N_i|` average of the adapted
    /// time-domain estimates.
    ConventionalAveraging,
    /// Thresholding diffusion with a constant threshold `beta0`.
    ImatFixedThreshold,
    /// Thresholding diffusion with the decaying threshold `beta(t)`.
    ImatAdaptive,
    /// Diffuse phase replaced by the optimal per-component weights computed
    /// from the true masks and the theoretical LMS error variance.
    OracleOptimalWeights,
    /// Every node runs LMS on its own.
    NoCooperation,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::ConventionalAveraging,
        Strategy::ImatFixedThreshold,
        Strategy::ImatAdaptive,
        Strategy::OracleOptimalWeights,
        Strategy::NoCooperation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::ConventionalAveraging => "conventional_averaging",
            Strategy::ImatFixedThreshold => "imat_fixed_threshold",
            Strategy::ImatAdaptive => "imat_adaptive",
            Strategy::OracleOptimalWeights => "oracle_optimal_weights",
            Strategy::NoCooperation => "no_cooperation",
        }
    }

    fn uses_buffer(self) -> bool {
        matches!(
            self,
            Strategy::ImatFixedThreshold | Strategy::ImatAdaptive | Strategy::OracleOptimalWeights
        )
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = Strategy::ALL.iter().map(|s| s.name()).collect();
                format!(
                    "unknown strategy `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

/// Everything needed to start one repetition.
#[derive(Debug, Clone)]
pub struct NetworkSetup {
    pub graph: NetworkGraph,
    pub transform: Transform,
    pub target: TargetModel,
    /// True observability masks, one per node.
    pub masks: Vec<ObservabilityMask>,
    pub params: LmsParams,
    pub gates: FlowGates,
    pub schedule: ThresholdSchedule,
    pub strategy: Strategy,
    /// Variance of the target coefficients, used for the oracle SNRs.
    pub target_variance: f64,
}

#[derive(Debug, Clone)]
pub struct Network {
    transform: Transform,
    neighborhoods: Vec<Vec<usize>>,
    target: TargetModel,
    masks: Vec<ObservabilityMask>,
    masked_targets: Vec<Vec<f64>>,
    params: LmsParams,
    gates: FlowGates,
    schedule: ThresholdSchedule,
    strategy: Strategy,
    /// `oracle_gains[i][k][j]`: weight of the `k`-th neighbor of node `i` on component `j`.
    oracle_gains: Vec<Vec<Vec<f64>>>,
    states: Vec<NodeState>,
    rngs: Vec<ChaCha8Rng>,
    t: u64,
}

/// Output of a node's local phase, exchanged with its neighbors.
struct LocalPhase {
    omega_big: Vec<f64>,
    support: ObservabilityMask,
    psi: Vec<f64>,
    share: ObservabilityMask,
}

impl Network {
    /// `rngs[i]` drives node `i`'s measurements.
    pub fn new(setup: NetworkSetup, rngs: Vec<ChaCha8Rng>) -> Result<Self> {
        let n = setup.graph.node_count();
        let len = setup.transform.size();
        check_len("masks", setup.masks.len(), n)?;
        check_len("node random streams", rngs.len(), n)?;
        check_len("target", setup.target.len(), len)?;
        check_len("target coefficients", setup.target.coeffs.len(), len)?;
        for m in &setup.masks {
            check_len("mask", m.len(), len)?;
        }
        setup.gates.validate()?;

        let neighborhoods = (0..n)
            .map(|i| setup.graph.neighbors(i))
            .collect::<Result<Vec<_>>>()?;
        let masked_targets = setup
            .masks
            .iter()
            .map(|m| setup.transform.apply_mask(m, &setup.target.time))
            .collect::<Result<Vec<_>>>()?;

        let schedule = match setup.strategy {
            Strategy::ImatFixedThreshold => ThresholdSchedule::fixed(setup.schedule.beta0)?,
            _ => setup.schedule,
        };

        let oracle_gains = if setup.strategy == Strategy::OracleOptimalWeights {
            let lambda_sq = oracle_snr(&setup.params, len, setup.target_variance);
            neighborhoods
                .iter()
                .map(|nb| {
                    let masks: Vec<&ObservabilityMask> =
                        nb.iter().map(|&k| &setup.masks[k]).collect();
                    weights::per_component_gain_matrices(&masks, &vec![lambda_sq; nb.len()])
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };

        Ok(Network {
            transform: setup.transform,
            neighborhoods,
            target: setup.target,
            masks: setup.masks,
            masked_targets,
            params: setup.params,
            gates: setup.gates,
            schedule,
            strategy: setup.strategy,
            oracle_gains,
            states: vec![NodeState::zeros(len); n],
            rngs,
            t: 0,
        })
    }

    /// Node `i` seeded from `seed` on stream `stream_base + i`.
    pub fn node_streams(seed: u64, stream_base: u64, n: usize) -> Vec<ChaCha8Rng> {
        (0..n)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(stream_base + i as u64);
                rng
            })
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[NodeState] {
        &self.states
    }

    pub fn masks(&self) -> &[ObservabilityMask] {
        &self.masks
    }

    pub fn target(&self) -> &TargetModel {
        &self.target
    }

    pub fn masked_target(&self, i: usize) -> &[f64] {
        &self.masked_targets[i]
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    /// Index of the last completed step.
    pub fn time(&self) -> u64 {
        self.t
    }

    /// Advances every node by one step, processing nodes in index order.
    pub fn step(&mut self) -> Result<()> {
        let order: Vec<usize> = (0..self.node_count()).collect();
        self.step_with_order(&order)
    }

    /// Advances one step, running the per-node phases in `order`.
    /// `order` must be a permutation of the node indices.
    pub fn step_with_order(&mut self, order: &[usize]) -> Result<()> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::arg(
                "processing order must be a permutation of the nodes",
            ));
        }

        let t = self.t + 1;
        let beta = self.schedule.level(t);
        let (eta, alpha) = self.gates.at(t);

        let mut local: Vec<Option<LocalPhase>> = (0..n).map(|_| None).collect();
        for &i in order {
            local[i] = Some(self.local_phase(i, beta, eta));
        }
        let local: Vec<LocalPhase> = local.into_iter().map(Option::unwrap).collect();

        for &i in order {
            self.exchange_phase(i, &local, alpha)?;
        }
        self.t = t;
        Ok(())
    }

    fn local_phase(&mut self, i: usize, beta: f64, eta: f64) -> LocalPhase {
        let meas = lms::draw_measurement(&self.masked_targets[i], &self.params, &mut self.rngs[i]);
        let state = &self.states[i];
        let mut adapted = state.omega.clone();
        lms::adapt_in_place(&mut adapted, &meas, self.params.mu);
        let mut omega_big = vec![0.0; adapted.len()];
        self.transform.forward_into(&adapted, &mut omega_big);

        match self.strategy {
            Strategy::ImatAdaptive | Strategy::ImatFixedThreshold => {
                let support = imat::estimate_support(&omega_big, beta);
                let psi = imat::local_update(&state.psi, &omega_big, &support, eta)
                    .expect("node vectors share one length");
                let share = support.union(&imat::estimate_support(&psi, beta));
                LocalPhase {
                    omega_big,
                    support,
                    psi,
                    share,
                }
            }
            Strategy::OracleOptimalWeights => LocalPhase {
                support: self.masks[i].clone(),
                share: self.masks[i].clone(),
                psi: state.psi.clone(),
                omega_big,
            },
            Strategy::ConventionalAveraging | Strategy::NoCooperation => {
                let len = omega_big.len();
                LocalPhase {
                    omega_big,
                    support: ObservabilityMask::full(len),
                    share: ObservabilityMask::full(len),
                    psi: adapted,
                }
            }
        }
    }

    fn exchange_phase(&mut self, i: usize, local: &[LocalPhase], alpha: f64) -> Result<()> {
        let own = &local[i];
        let nb = &self.neighborhoods[i];
        let (omega, psi) = match self.strategy {
            Strategy::ImatAdaptive | Strategy::ImatFixedThreshold => {
                let shared: Vec<(&[f64], &ObservabilityMask)> = nb
                    .iter()
                    .map(|&j| (local[j].psi.as_slice(), &local[j].share))
                    .collect();
                let psi = imat::diffuse(&shared, &own.psi)?;
                let omega =
                    imat::combine(&psi, &own.omega_big, &own.support, alpha, &self.transform)?;
                (omega, psi)
            }
            Strategy::OracleOptimalWeights => {
                let gains = &self.oracle_gains[i];
                let len = own.omega_big.len();
                let mut psi = vec![0.0; len];
                for (k, &j) in nb.iter().enumerate() {
                    for (p, (g, o)) in psi.iter_mut().zip(gains[k].iter().zip(&local[j].omega_big))
                    {
                        *p += g * o;
                    }
                }
                let omega =
                    imat::combine(&psi, &own.omega_big, &own.support, alpha, &self.transform)?;
                (omega, psi)
            }
            Strategy::ConventionalAveraging => {
                // Adapted time-domain estimates travel in `psi` for these strategies.
                let len = own.psi.len();
                let mut avg = vec![0.0; len];
                for &j in nb {
                    for (a, v) in avg.iter_mut().zip(&local[j].psi) {
                        *a += v;
                    }
                }
                let k = nb.len() as f64;
                avg.iter_mut().for_each(|a| *a /= k);
                (avg.clone(), avg)
            }
            Strategy::NoCooperation => (own.psi.clone(), own.psi.clone()),
        };
        let state = &mut self.states[i];
        state.omega = omega;
        state.psi = psi;
        state.omega_big.clone_from(&own.omega_big);
        state.support.clone_from(&own.support);
        Ok(())
    }

    /// Node `i`'s estimate of the full target: the time-domain diffusion
    /// buffer for buffer-based strategies, the combined estimate otherwise.
    pub fn network_estimate(&self, i: usize) -> Vec<f64> {
        let s = &self.states[i];
        if self.strategy.uses_buffer() {
            let mut out = vec![0.0; s.psi.len()];
            self.transform.inverse_into(&s.psi, &mut out);
            out
        } else {
            s.omega.clone()
        }
    }

    /// Normalized local MSD of node `i`. A node that observes nothing is
    /// scored without normalization against its (zero) local target.
    pub fn local_msd(&self, i: usize) -> f64 {
        let omega = &self.states[i].omega;
        let target = &self.masked_targets[i];
        match metrics::local_msd(omega, target, &self.masks[i]) {
            Ok(v) => v,
            Err(_) => {
                omega
                    .iter()
                    .zip(target)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    / omega.len() as f64
            }
        }
    }

    pub fn consensus_msd(&self) -> f64 {
        let estimates: Vec<Vec<f64>> = (0..self.node_count())
            .map(|i| self.network_estimate(i))
            .collect();
        metrics::consensus_msd(&estimates, &self.target.time)
            .expect("network has at least one node")
    }

    /// Runs `horizon` steps and records the MSD after each one.
    pub fn run(&mut self, horizon: usize) -> Result<LinearTrace> {
        let n = self.node_count();
        let mut trace = LinearTrace::new(n, horizon);
        for _ in 0..horizon {
            self.step()?;
            for i in 0..n {
                trace.local[i].push(self.local_msd(i));
            }
            trace.consensus.push(self.consensus_msd());
        }
        Ok(trace)
    }
}

/// SNR `s0 / s_k` with `s_k` the theoretical steady-state LMS error variance.
fn oracle_snr(params: &LmsParams, len: usize, target_variance: f64) -> f64 {
    let floor = ORACLE_MIN_ERROR_RATIO * target_variance;
    let err = params
        .steady_state_msd_per_component(len)
        .unwrap_or(target_variance)
        .max(floor);
    target_variance / err
}
