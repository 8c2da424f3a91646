//! Checked-in scenario presets, one per figure-style panel.

use crate::error::{Error, Result};
use crate::scenario::config::{parse_config, ScenarioConfig};

#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub text: &'static str,
}

pub const PRESETS: [Preset; 4] = [
    Preset {
        name: "time_partial",
        description: "time-domain partial observation (identity transform, rho = 0.5)",
        text: include_str!("../../presets/time_partial.cfg"),
    },
    Preset {
        name: "time_full",
        description: "time-domain full observation",
        text: include_str!("../../presets/time_full.cfg"),
    },
    Preset {
        name: "dct_low_noise",
        description: "DCT-domain partial observation, sigma = 0.01",
        text: include_str!("../../presets/dct_low_noise.cfg"),
    },
    Preset {
        name: "dct_high_noise",
        description: "DCT-domain partial observation, sigma = 0.1",
        text: include_str!("../../presets/dct_high_noise.cfg"),
    },
];

pub fn find(name: &str) -> Result<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
        Error::config(
            "preset",
            format!("unknown preset `{name}` (available: {})", names.join(", ")),
        )
    })
}

pub fn load(name: &str) -> Result<ScenarioConfig> {
    parse_config(find(name)?.text)
}
