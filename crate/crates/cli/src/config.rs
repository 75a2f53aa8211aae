//! Optional TOML settings. Command-line flags override them, and they
//! override built-in defaults.

use crate::support::input_err;
use anyhow::Result;
use serde::Deserialize;
use std::path::Path;
use vidalign::align::{AlignmentConfig, Margin, Method};
use vidalign::features::MaskScale;
use vidalign::synth::WaitStrategy;

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub align: AlignSection,
    pub mask: MaskSection,
    pub classify: ClassifySection,
    pub synth: SynthSection,
    pub benchmark: BenchmarkSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlignSection {
    pub method: Option<Method>,
    pub margin: Option<Margin>,
    pub lambda: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MaskSection {
    pub margin_px: Option<f64>,
    pub outside_drop: Option<f64>,
    pub scale: Option<MaskScale>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifySection {
    pub folds: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSection {
    pub videos: Option<usize>,
    pub phases: Option<usize>,
    pub min_len: Option<usize>,
    pub max_len: Option<usize>,
    pub dim: Option<usize>,
    pub noise: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchmarkSection {
    pub pairs: Option<usize>,
    pub phases: Option<usize>,
    pub min_len: Option<usize>,
    pub max_len: Option<usize>,
    pub dim: Option<usize>,
    pub noise: Option<f64>,
    pub wait: Option<WaitStrategy>,
    pub corridor_offset: Option<f64>,
    pub corridor_half_width: Option<f64>,
    pub corridor_attenuation: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| input_err(format!("{}: {e}", path.display())))
    }

    pub fn seed(&self, flag: Option<u64>) -> Result<u64> {
        flag.or(self.seed)
            .ok_or_else(|| input_err("--seed is required (or `seed` in the config file)"))
    }

    pub fn alignment(
        &self,
        method: Option<Method>,
        margin: Option<Margin>,
        lambda: Option<f64>,
    ) -> Result<AlignmentConfig> {
        let d = AlignmentConfig::default();
        let cfg = AlignmentConfig {
            method: method.or(self.align.method).unwrap_or(d.method),
            margin: margin.or(self.align.margin).unwrap_or(d.margin),
            lambda: lambda.or(self.align.lambda).unwrap_or(d.lambda),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
