//! Monte Carlo orchestration.
//!
//! Every repetition draws its own topology, target and masks. All random
//! streams come from one ChaCha8 seed (the config seed); the stream index
//! encodes the repetition and the purpose, so repetitions are independent
//! and can run in any order without changing the result.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lms::LmsParams;
use crate::metrics::{self, LinearTrace, MsdTrace};
use crate::network::{Network, NetworkSetup};
use crate::scenario::config::{Observability, ScenarioConfig};
use crate::target::{self, TargetModel};
use crate::topology::{self, MAX_TOPOLOGY_ATTEMPTS};
use crate::transforms::{ObservabilityMask, Transform};

const STREAM_TOPOLOGY: u64 = 0;
const STREAM_TARGET: u64 = 1_000;
const STREAM_MASKS: u64 = 1_001;
const STREAM_NODES: u64 = 1 << 20;

fn stream(seed: u64, rep: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((rep as u64) << 32) | purpose);
    rng
}

/// Draws the topology, target and masks of repetition `rep` and returns the
/// network ready to step.
pub fn build_network(cfg: &ScenarioConfig, rep: usize) -> Result<Network> {
    cfg.validate()?;
    let transform = Transform::new(cfg.transform, cfg.vec_len)?;
    let graph = topology::generate_connected_erdos_renyi(
        cfg.n_nodes,
        cfg.link_prob,
        MAX_TOPOLOGY_ATTEMPTS,
        |attempt| stream(cfg.seed, rep, STREAM_TOPOLOGY + attempt as u64),
    )?;
    let target = TargetModel::generate(
        &cfg.target_gen,
        &transform,
        &mut stream(cfg.seed, rep, STREAM_TARGET),
    )?;
    let masks = match cfg.observability {
        Observability::Full => vec![ObservabilityMask::full(cfg.vec_len); cfg.n_nodes],
        Observability::Partial => target::draw_masks(
            cfg.n_nodes,
            cfg.vec_len,
            cfg.obs_prob,
            &mut stream(cfg.seed, rep, STREAM_MASKS),
        )?,
    };
    let setup = NetworkSetup {
        graph,
        transform,
        target,
        masks,
        params: LmsParams::new(cfg.mu, cfg.noise_sigma)?,
        gates: cfg.gates,
        schedule: cfg.schedule,
        strategy: cfg.strategy,
        target_variance: cfg.target_gen.variance(),
    };
    let rngs = (0..cfg.n_nodes)
        .map(|i| stream(cfg.seed, rep, STREAM_NODES + i as u64))
        .collect();
    Network::new(setup, rngs)
}

/// Linear-scale MSD series of repetition `rep`.
pub fn run_repetition(cfg: &ScenarioConfig, rep: usize) -> Result<LinearTrace> {
    let mut net = build_network(cfg, rep)?;
    let trace = net.run(cfg.horizon)?;
    if trace.consensus.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric(format!(
            "repetition {rep} diverged (non-finite MSD); reduce mu"
        )));
    }
    Ok(trace)
}

/// Runs `cfg.reps` repetitions in parallel and averages them in repetition order.
pub fn run_simulation(cfg: &ScenarioConfig) -> Result<MsdTrace> {
    cfg.validate()?;
    let traces = (0..cfg.reps)
        .into_par_iter()
        .map(|rep| run_repetition(cfg, rep))
        .collect::<Result<Vec<_>>>()?;
    metrics::average_traces(&traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Strategy;

    fn small() -> ScenarioConfig {
        ScenarioConfig {
            n_nodes: 5,
            vec_len: 8,
            link_prob: 0.6,
            horizon: 200,
            reps: 2,
            mu: 0.05,
            gates: crate::imat::FlowGates {
                switch_time: 100,
                ..ScenarioConfig::default().gates
            },
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn zero_horizon_gives_empty_trace() {
        let cfg = ScenarioConfig {
            horizon: 0,
            gates: crate::imat::FlowGates {
                switch_time: 0,
                ..small().gates
            },
            ..small()
        };
        let trace = run_simulation(&cfg).unwrap();
        assert_eq!(trace.horizon, 0);
        assert!(trace.consensus_msd_db.is_empty());
        assert_eq!(trace.nodes(), 5);
    }

    #[test]
    fn repetitions_are_reproducible_and_distinct() {
        let cfg = small();
        let a = run_repetition(&cfg, 0).unwrap();
        let b = run_repetition(&cfg, 0).unwrap();
        let c = run_repetition(&cfg, 1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn averaging_identical_repetitions_is_identity() {
        let cfg = small();
        let one = run_repetition(&cfg, 0).unwrap();
        let single = metrics::average_traces(std::slice::from_ref(&one)).unwrap();
        let double = metrics::average_traces(&[one.clone(), one]).unwrap();
        assert_eq!(single.consensus_msd_db, double.consensus_msd_db);
        assert_eq!(single.local_msd_db, double.local_msd_db);
    }

    #[test]
    fn impossible_topology_is_reported() {
        let cfg = ScenarioConfig {
            link_prob: 0.0,
            ..small()
        };
        assert!(matches!(
            run_simulation(&cfg),
            Err(Error::TopologyExhausted { .. })
        ));
    }

    #[test]
    fn full_observability_builds_full_masks() {
        let cfg = ScenarioConfig {
            observability: Observability::Full,
            strategy: Strategy::NoCooperation,
            ..small()
        };
        let net = build_network(&cfg, 0).unwrap();
        assert!(net.masks().iter().all(|m| m.count() == 8));
    }
}
