//! Diffusion LMS over networks whose nodes observe only part of the target.
//!
//! Each node sees the target through a 0/1 mask in a transform domain
//! (identity or DCT), runs LMS on its masked measurements, and exchanges
//! transform-domain buffers with its neighbors. Supports are estimated by
//! thresholding with a decaying level, and information flow is controlled
//! by an outflow gate `eta` and an inflow gate `alpha`.
//!
//! Modules, bottom-up:
//!
//! - [`transforms`]: identity and orthonormal DCT-II, observability masks.
//! - [`topology`]: Erdős–Rényi graphs with self-loops.
//! - [`lms`]: measurement model and the LMS step.
//! - [`target`]: ground-truth target and mask generation.
//! - [`imat`]: threshold schedule, support estimation, local update / diffuse / combine.
//! - [`weights`]: optimal per-component and conventional scalar combination weights.
//! - [`metrics`]: local and consensus MSD, dB conversion, Monte Carlo averaging.
//! - [`network`]: one repetition of the synchronous-round simulation.
//! - [`scenario`]: configuration files, presets, parallel runs, CSV and gnuplot output.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod error;
pub mod imat;
pub mod lms;
pub mod metrics;
pub mod network;
pub mod scenario;
pub mod target;
pub mod topology;
pub mod transforms;
pub mod weights;

pub use error::{Error, Result};
pub use imat::{FlowGates, NodeState, ThresholdSchedule};
pub use metrics::MsdTrace;
pub use network::{Network, NetworkSetup, Strategy};
pub use scenario::ScenarioConfig;
pub use transforms::{ObservabilityMask, Transform, TransformKind};
