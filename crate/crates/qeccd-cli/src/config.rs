//! Run configuration: JSON file merged with command-line overrides, echoed
//! verbatim into the output directory so every artifact is reproducible
//! from its own record.

use qeccd::analysis::DiscordInit;
use qeccd::channel::ChannelParams;
use qeccd::code::MeasureMode;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub channel: ChannelSection,
    pub protocol: ProtocolSection,
    pub output: OutputSection,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub gamma: f64,
    pub omega0: f64,
    pub k0: f64,
    pub r12: f64,
    pub alpha: f64,
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<TimeGrid>,
}

impl Default for ChannelSection {
    fn default() -> Self {
        let p = ChannelParams::default();
        ChannelSection {
            gamma: p.gamma,
            omega0: p.omega0,
            k0: p.k0,
            r12: p.r12,
            alpha: p.alpha,
            t: p.t,
            t_grid: None,
        }
    }
}

impl ChannelSection {
    pub fn params(&self) -> ChannelParams {
        ChannelParams {
            gamma: self.gamma,
            omega0: self.omega0,
            k0: self.k0,
            r12: self.r12,
            alpha: self.alpha,
            t: self.t,
        }
    }

    /// The configured time grid, or a linear grid from 0 to `t`.
    pub fn times(&self) -> Vec<f64> {
        match &self.t_grid {
            Some(g) => g.values(),
            None => TimeGrid {
                start: 0.0,
                stop: self.t,
                points: 101,
                spacing: Spacing::Linear,
            }
            .values(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl TimeGrid {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points.max(2);
        (0..n)
            .map(|i| {
                let s = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * s,
                    Spacing::Log => self.start * (self.stop / self.start).powf(s),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolSection {
    pub mode: ModeKind,
    pub shots: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub beta0: f64,
    pub beta1: f64,
    pub discord_init: DiscordInit,
}

impl Default for ProtocolSection {
    fn default() -> Self {
        ProtocolSection {
            mode: ModeKind::Exact,
            shots: 1_000_000,
            seed: None,
            beta0: 1.0,
            beta1: 0.0,
            discord_init: DiscordInit::GroundGround,
        }
    }
}

impl ProtocolSection {
    /// Concrete measurement mode; panics if a sampled run has no seed
    /// (the caller resolves one beforehand).
    pub fn measure_mode(&self) -> MeasureMode {
        match self.mode {
            ModeKind::Exact => MeasureMode::Exact,
            ModeKind::Sampled => MeasureMode::Sampled {
                shots: self.shots,
                seed: self.seed.expect("seed resolved before running"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeKind {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: String,
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: "out".into(),
            format: Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}
