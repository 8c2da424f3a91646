//! Flat `key = value` scenario configuration.
//!
//! Blank lines and `#` comments are ignored. Every key is optional and
//! falls back to the desk-scale default; unknown keys are rejected.
//!
//! | key            | default                        |
//! |----------------|--------------------------------|
//! | `n_nodes`      | 20                             |
//! | `vec_len`      | 64                             |
//! | `link_prob`    | 0.3                            |
//! | `obs_prob`     | 0.5                            |
//! | `transform`    | `identity` (or `dct`)          |
//! | `mu`           | 0.01                           |
//! | `noise_sigma`  | 0.01                           |
//! | `horizon`      | 5000                           |
//! | `switch_time`  | 2500                           |
//! | `eta`          | 0.5                            |
//! | `alpha`        | 0                              |
//! | `eta_after`    | 0                              |
//! | `alpha_after`  | 0.5                            |
//! | `beta1`        | 2                              |
//! | `beta0`        | 0.25                           |
//! | `tau`          | 500                            |
//! | `strategy`     | `imat_adaptive`                |
//! | `reps`         | 20                             |
//! | `seed`         | 1                              |
//! | `target_gen`   | `uniform_magnitude(0.5, 1.5)`  |
//! | `observability`| `partial` (or `full`)          |

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::imat::{FlowGates, ThresholdSchedule};
use crate::network::Strategy;
use crate::target::TargetGenerator;
use crate::transforms::TransformKind;

pub const DEFAULT_SEED: u64 = 1;

/// Largest supported network; node random streams are indexed below this.
pub const MAX_NODES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observability {
    /// Bernoulli(`obs_prob`) masks per node and component.
    Partial,
    /// Every node observes every component.
    Full,
}

impl Observability {
    pub fn name(self) -> &'static str {
        match self {
            Observability::Partial => "partial",
            Observability::Full => "full",
        }
    }
}

impl FromStr for Observability {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "partial" => Ok(Observability::Partial),
            "full" => Ok(Observability::Full),
            other => Err(format!(
                "unknown observability `{other}` (expected partial | full)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub n_nodes: usize,
    pub vec_len: usize,
    pub link_prob: f64,
    pub obs_prob: f64,
    pub transform: TransformKind,
    pub mu: f64,
    pub noise_sigma: f64,
    pub horizon: usize,
    /// Gate schedule; `gates.switch_time` is the step at which the second pair applies.
    pub gates: FlowGates,
    pub schedule: ThresholdSchedule,
    pub strategy: Strategy,
    pub reps: usize,
    pub seed: u64,
    pub target_gen: TargetGenerator,
    pub observability: Observability,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            n_nodes: 20,
            vec_len: 64,
            link_prob: 0.3,
            obs_prob: 0.5,
            transform: TransformKind::Identity,
            mu: 0.01,
            noise_sigma: 0.01,
            horizon: 5000,
            gates: FlowGates {
                eta: 0.5,
                alpha: 0.0,
                switch_time: 2500,
                eta_after: 0.0,
                alpha_after: 0.5,
            },
            schedule: ThresholdSchedule {
                beta1: 2.0,
                beta0: 0.25,
                tau: 500.0,
            },
            strategy: Strategy::ImatAdaptive,
            reps: 20,
            seed: DEFAULT_SEED,
            target_gen: TargetGenerator::UniformMagnitude { lo: 0.5, hi: 1.5 },
            observability: Observability::Partial,
        }
    }
}

const KEYS: [&str; 21] = [
    "n_nodes",
    "vec_len",
    "link_prob",
    "obs_prob",
    "transform",
    "mu",
    "noise_sigma",
    "horizon",
    "switch_time",
    "eta",
    "alpha",
    "eta_after",
    "alpha_after",
    "beta1",
    "beta0",
    "tau",
    "strategy",
    "reps",
    "seed",
    "target_gen",
    "observability",
];

impl ScenarioConfig {
    pub fn keys() -> &'static [&'static str] {
        &KEYS
    }

    /// Checks every range constraint, naming the offending key.
    pub fn validate(&self) -> Result<()> {
        let unit = |key: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::config(key, format!("{v} outside [0, 1]")))
            }
        };
        if self.n_nodes == 0 || self.n_nodes >= MAX_NODES {
            return Err(Error::config(
                "n_nodes",
                format!("must be in 1..{MAX_NODES}"),
            ));
        }
        if self.vec_len == 0 {
            return Err(Error::config("vec_len", "must be at least 1"));
        }
        unit("link_prob", self.link_prob)?;
        unit("obs_prob", self.obs_prob)?;
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(Error::config("mu", format!("{} must be > 0", self.mu)));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(Error::config(
                "noise_sigma",
                format!("{} must be >= 0", self.noise_sigma),
            ));
        }
        if self.gates.switch_time > self.horizon as u64 {
            return Err(Error::config(
                "switch_time",
                format!(
                    "{} exceeds horizon {}",
                    self.gates.switch_time, self.horizon
                ),
            ));
        }
        unit("eta", self.gates.eta)?;
        unit("alpha", self.gates.alpha)?;
        unit("eta_after", self.gates.eta_after)?;
        unit("alpha_after", self.gates.alpha_after)?;
        let s = &self.schedule;
        if !(s.beta1 >= 0.0 && s.beta1.is_finite()) {
            return Err(Error::config("beta1", format!("{} must be >= 0", s.beta1)));
        }
        if !(s.beta0 >= 0.0 && s.beta0.is_finite()) {
            return Err(Error::config("beta0", format!("{} must be >= 0", s.beta0)));
        }
        if !(s.tau > 0.0 && s.tau.is_finite()) {
            return Err(Error::config("tau", format!("{} must be > 0", s.tau)));
        }
        if self.reps == 0 {
            return Err(Error::config("reps", "must be at least 1"));
        }
        self.target_gen
            .validate()
            .map_err(|e| Error::config("target_gen", e.to_string()))?;
        Ok(())
    }

    /// Serializes every key; the output reparses to an equal config.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let TargetGenerator::UniformMagnitude { lo, hi } = self.target_gen;
        let g = &self.gates;
        let b = &self.schedule;
        let _ = writeln!(s, "n_nodes = {}", self.n_nodes);
        let _ = writeln!(s, "vec_len = {}", self.vec_len);
        let _ = writeln!(s, "link_prob = {}", self.link_prob);
        let _ = writeln!(s, "obs_prob = {}", self.obs_prob);
        let _ = writeln!(s, "transform = {}", self.transform);
        let _ = writeln!(s, "mu = {}", self.mu);
        let _ = writeln!(s, "noise_sigma = {}", self.noise_sigma);
        let _ = writeln!(s, "horizon = {}", self.horizon);
        let _ = writeln!(s, "switch_time = {}", g.switch_time);
        let _ = writeln!(s, "eta = {}", g.eta);
        let _ = writeln!(s, "alpha = {}", g.alpha);
        let _ = writeln!(s, "eta_after = {}", g.eta_after);
        let _ = writeln!(s, "alpha_after = {}", g.alpha_after);
        let _ = writeln!(s, "beta1 = {}", b.beta1);
        let _ = writeln!(s, "beta0 = {}", b.beta0);
        let _ = writeln!(s, "tau = {}", b.tau);
        let _ = writeln!(s, "strategy = {}", self.strategy);
        let _ = writeln!(s, "reps = {}", self.reps);
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "target_gen = uniform_magnitude({lo}, {hi})");
        let _ = writeln!(s, "observability = {}", self.observability.name());
        s
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse::<T>()
                .map_err(|_| Error::config(key, format!("cannot parse `{value}`")))
        }
        fn named<T: FromStr<Err = String>>(key: &str, value: &str) -> Result<T> {
            value.parse::<T>().map_err(|e| Error::config(key, e))
        }
        match key {
            "n_nodes" => self.n_nodes = num(key, value)?,
            "vec_len" => self.vec_len = num(key, value)?,
            "link_prob" => self.link_prob = num(key, value)?,
            "obs_prob" => self.obs_prob = num(key, value)?,
            "transform" => self.transform = named(key, value)?,
            "mu" => self.mu = num(key, value)?,
            "noise_sigma" => self.noise_sigma = num(key, value)?,
            "horizon" => self.horizon = num(key, value)?,
            "switch_time" => self.gates.switch_time = num(key, value)?,
            "eta" => self.gates.eta = num(key, value)?,
            "alpha" => self.gates.alpha = num(key, value)?,
            "eta_after" => self.gates.eta_after = num(key, value)?,
            "alpha_after" => self.gates.alpha_after = num(key, value)?,
            "beta1" => self.schedule.beta1 = num(key, value)?,
            "beta0" => self.schedule.beta0 = num(key, value)?,
            "tau" => self.schedule.tau = num(key, value)?,
            "strategy" => self.strategy = named(key, value)?,
            "reps" => self.reps = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "target_gen" => self.target_gen = parse_target_gen(value)?,
            "observability" => self.observability = named(key, value)?,
            _ => return Err(Error::config(key, "unknown key")),
        }
        Ok(())
    }
}

fn parse_target_gen(value: &str) -> Result<TargetGenerator> {
    let bad = || {
        Error::config(
            "target_gen",
            format!("expected `uniform_magnitude(lo, hi)`, got `{value}`"),
        )
    };
    let inner = value
        .trim()
        .strip_prefix("uniform_magnitude")
        .map(str::trim)
        .and_then(|s| s.strip_prefix('('))
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut parts = inner.split(',').map(str::trim);
    let (Some(lo), Some(hi), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    Ok(TargetGenerator::UniformMagnitude { lo, hi })
}

/// Parses config text; a missing `seed` key falls back to `default_seed`.
pub fn parse_config_with_default_seed(text: &str, default_seed: u64) -> Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig {
        seed: default_seed,
        ..ScenarioConfig::default()
    };
    let mut seen: Vec<&str> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(
                format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            )
        })?;
        let (key, value) = (key.trim(), value.trim());
        if seen.contains(&key) {
            return Err(Error::config(key, "given more than once"));
        }
        cfg.set(key, value)?;
        seen.push(key);
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    parse_config_with_default_seed(text, DEFAULT_SEED)
}

pub fn load_config(path: &Path, default_seed: u64) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), format!("cannot read: {e}")))?;
    parse_config_with_default_seed(&text, default_seed)
}
