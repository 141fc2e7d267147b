//! One-dimensional parameter sweeps.
//!
//! Every point reuses the same seed, so curves differ only through the swept
//! parameter (common random numbers).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::montecarlo::campaign::{run_campaign, CampaignConfig, CampaignStats};
use crate::params::SimParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// BD height [m].
    BdHeight,
    /// Signed BD tilt from vertical [deg], in the scenario's tilt frame.
    BdOrientation,
    /// Receiver field-of-view semi-angle [deg].
    Fov,
    CodeRate,
    /// Rate threshold [bit/s].
    RateThreshold,
    None,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 6] = [
        SweepAxis::BdHeight,
        SweepAxis::BdOrientation,
        SweepAxis::Fov,
        SweepAxis::CodeRate,
        SweepAxis::RateThreshold,
        SweepAxis::None,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::BdHeight => "bd_height",
            SweepAxis::BdOrientation => "bd_orientation",
            SweepAxis::Fov => "fov",
            SweepAxis::CodeRate => "code_rate",
            SweepAxis::RateThreshold => "rate_threshold",
            SweepAxis::None => "none",
        }
    }

    /// Returns a copy of `base` with the axis set to `value`.
    pub fn apply(&self, base: &SimParams, value: f64) -> Result<SimParams, ModelError> {
        let mut p = base.clone();
        match self {
            SweepAxis::BdHeight => p.scenario.bd_height = value,
            SweepAxis::BdOrientation => p.scenario.bd_tilt = value.to_radians(),
            SweepAxis::Fov => p.scenario.fov = value.to_radians(),
            SweepAxis::CodeRate => {
                if !(value > 0.0 && value <= 1.0) {
                    return Err(ModelError::domain("code_rate", value, "(0, 1]"));
                }
                p.fbl.code_rate = value
            }
            SweepAxis::RateThreshold => {
                if !(value > 0.0) {
                    return Err(ModelError::domain("rate_threshold", value, "(0, inf)"));
                }
                p.fbl.rate_threshold = value
            }
            SweepAxis::None => {}
        }
        p.validate()?;
        Ok(p)
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SweepAxis::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<_> = SweepAxis::ALL.iter().map(|a| a.name()).collect();
            format!("unknown axis `{s}`, expected one of {}", names.join(", "))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis: SweepAxis,
    pub value: f64,
    pub stats: CampaignStats,
}

pub fn run_sweep(
    base: &SimParams,
    config: &CampaignConfig,
    axis: SweepAxis,
    values: &[f64],
) -> Result<Vec<SweepRow>, ModelError> {
    if values.is_empty() {
        return Err(ModelError::Geometry("sweep needs at least one axis value"));
    }
    values
        .iter()
        .map(|&value| {
            let params = axis.apply(base, value)?;
            Ok(SweepRow {
                axis,
                value,
                stats: run_campaign(&params, config)?,
            })
        })
        .collect()
}

/// `count` values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// `count` log-spaced values from `start` to `stop` inclusive.
pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    linspace(start.log10(), stop.log10(), count)
        .into_iter()
        .map(|e| 10f64.powf(e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CampaignConfig {
        CampaignConfig {
            drops: 500,
            seed: 2,
            threads: Some(2),
        }
    }

    #[test]
    fn one_row_per_value() {
        let rows = run_sweep(&SimParams::baseline(), &cfg(), SweepAxis::BdHeight, &[1.3, 1.5, 1.7]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1].value, 1.5);
    }

    #[test]
    fn single_value_equals_campaign() {
        let p = SimParams::baseline();
        let rows = run_sweep(&p, &cfg(), SweepAxis::CodeRate, &[0.75]).unwrap();
        assert_eq!(rows[0].stats, run_campaign(&p, &cfg()).unwrap());
        let none = run_sweep(&p, &cfg(), SweepAxis::None, &[0.0]).unwrap();
        assert_eq!(none[0].stats, rows[0].stats);
    }

    #[test]
    fn invalid_values_rejected() {
        let p = SimParams::baseline();
        assert!(run_sweep(&p, &cfg(), SweepAxis::CodeRate, &[]).is_err());
        assert!(run_sweep(&p, &cfg(), SweepAxis::CodeRate, &[1.5]).is_err());
        assert!(run_sweep(&p, &cfg(), SweepAxis::BdHeight, &[2.6]).is_err());
    }

    #[test]
    fn axis_names_round_trip() {
        for a in SweepAxis::ALL {
            assert_eq!(a.name().parse::<SweepAxis>().unwrap(), a);
        }
        assert!("height".parse::<SweepAxis>().is_err());
    }

    #[test]
    fn spacing_helpers() {
        assert_eq!(linspace(1.0, 2.0, 3), vec![1.0, 1.5, 2.0]);
        let l = logspace(1e3, 1e5, 3);
        assert!((l[1] - 1e4).abs() < 1e-9);
    }
}
