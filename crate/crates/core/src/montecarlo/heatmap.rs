//! Deterministic per-cell maps over the room.
//!
//! The BD is evaluated at each cell centre with an upward-facing receiver.
//! A cell is served by the LED whose coverage disc contains it and which
//! delivers the most optical power there; the remaining LEDs interfere.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::energy::harvested_power;
use crate::error::ModelError;
use crate::fbl::{q_inv, FblAssessment};
use crate::geometry::{coverage_radius, DevicePose, Point3};
use crate::params::SimParams;
use crate::rf::{linear_to_db, BcLinkState, LinkDraws, RfParams};
use crate::vlc::{ac_signal_amplitude, channel_gains, dc_photocurrent, vlc_sinr};

/// Lowest value shown on dB maps; uncovered cells also carry it.
pub const DB_FLOOR: f64 = 0.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeatmapMetric {
    VlcSinrDb,
    HarvestedPower,
    BcSnrDb,
    Outage,
}

impl HeatmapMetric {
    pub const ALL: [HeatmapMetric; 4] = [
        HeatmapMetric::VlcSinrDb,
        HeatmapMetric::HarvestedPower,
        HeatmapMetric::BcSnrDb,
        HeatmapMetric::Outage,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            HeatmapMetric::VlcSinrDb => "vlc_sinr_db",
            HeatmapMetric::HarvestedPower => "harvested_power",
            HeatmapMetric::BcSnrDb => "bc_snr_db",
            HeatmapMetric::Outage => "outage",
        }
    }

    pub fn unit(&self) -> &'static str {
        match self {
            HeatmapMetric::VlcSinrDb | HeatmapMetric::BcSnrDb => "dB",
            HeatmapMetric::HarvestedPower => "W",
            HeatmapMetric::Outage => "1",
        }
    }
}

impl fmt::Display for HeatmapMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeatmapMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HeatmapMetric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown heatmap metric `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    None,
    #[default]
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapSpec {
    pub metric: HeatmapMetric,
    /// Cells per meter.
    pub resolution: f64,
    pub normalization: Normalization,
    /// UE position used by the radio metrics; defaults to the room centre.
    pub ue_xy: Option<(f64, f64)>,
}

impl HeatmapSpec {
    pub fn new(metric: HeatmapMetric, resolution: f64) -> Self {
        HeatmapSpec {
            metric,
            resolution,
            normalization: Normalization::Max,
            ue_xy: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatmapGrid {
    pub metric: HeatmapMetric,
    pub resolution: f64,
    pub normalization: Normalization,
    pub bd_height: f64,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `values[iy * nx + ix]`.
    pub values: Vec<f64>,
    /// Radius of every LED's coverage disc at this BD height.
    pub coverage_radius: f64,
}

impl HeatmapGrid {
    pub fn x(&self, ix: usize) -> f64 {
        (ix as f64 + 0.5) / self.resolution
    }

    pub fn y(&self, iy: usize) -> f64 {
        (iy as f64 + 0.5) / self.resolution
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }

    /// Value of the cell containing `(x, y)`.
    pub fn sample(&self, x: f64, y: f64) -> f64 {
        let ix = ((x * self.resolution) as usize).min(self.nx - 1);
        let iy = ((y * self.resolution) as usize).min(self.ny - 1);
        self.at(ix, iy)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.ny).flat_map(move |iy| (0..self.nx).map(move |ix| (self.x(ix), self.y(iy), self.at(ix, iy))))
    }
}

pub fn compute_heatmap(params: &SimParams, spec: &HeatmapSpec) -> Result<HeatmapGrid, ModelError> {
    if !(spec.resolution > 0.0 && spec.resolution.is_finite()) {
        return Err(ModelError::domain("resolution", spec.resolution, "(0, inf)"));
    }
    params.validate()?;
    let s = &params.scenario;
    let nx = (s.room_w * spec.resolution).ceil() as usize;
    let ny = (s.room_l * spec.resolution).ceil() as usize;
    // Coverage of an upward receiver; a FoV of 90 deg covers everything.
    let radius = coverage_radius(s.led_height(), s.bd_height, 0.0, s.fov).unwrap_or(f64::INFINITY);
    let q_inv_eps = q_inv(params.fbl.target_error)?;
    let (ue_x, ue_y) = spec.ue_xy.unwrap_or((s.room_w / 2.0, s.room_l / 2.0));
    let ue = Point3::new(ue_x, ue_y, s.ue_height);
    let rf_no_shadow = RfParams {
        shadowing: false,
        ..params.rf.clone()
    };

    let mut values = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        for ix in 0..nx {
            let pos = Point3::new(
                (ix as f64 + 0.5) / spec.resolution,
                (iy as f64 + 0.5) / spec.resolution,
                s.bd_height,
            );
            let bd = DevicePose::upward(pos);
            let gains = channel_gains(s, &bd, &params.vlc);
            let serving = s
                .leds
                .iter()
                .enumerate()
                .filter(|(_, led)| led.position.distance_2d(&pos) <= radius)
                .map(|(i, _)| i)
                .filter(|&i| gains[i] > 0.0)
                .fold(None, |best: Option<usize>, i| match best {
                    Some(b) if gains[b] >= gains[i] => Some(b),
                    _ => Some(i),
                });

            let value = match spec.metric {
                HeatmapMetric::HarvestedPower => harvested_power(dc_photocurrent(&gains, &params.vlc), &params.energy),
                HeatmapMetric::VlcSinrDb => match serving {
                    Some(k) => linear_to_db(vlc_sinr(&gains, k, &params.vlc)).max(DB_FLOOR),
                    None => DB_FLOOR,
                },
                HeatmapMetric::BcSnrDb | HeatmapMetric::Outage => {
                    let Some(k) = serving else {
                        values.push(if spec.metric == HeatmapMetric::Outage {
                            1.0
                        } else {
                            DB_FLOOR
                        });
                        continue;
                    };
                    let i_ac = ac_signal_amplitude(gains[k], &params.vlc);
                    let bc = BcLinkState::evaluate(
                        &s.rfs_position,
                        &pos,
                        &ue,
                        i_ac,
                        &rf_no_shadow,
                        &LinkDraws::default(),
                        &LinkDraws::default(),
                    );
                    if spec.metric == HeatmapMetric::BcSnrDb {
                        linear_to_db(bc.snr).max(DB_FLOOR)
                    } else {
                        let sinr = vlc_sinr(&gains, k, &params.vlc);
                        let a = FblAssessment::assess(sinr, bc.snr, &params.fbl, q_inv_eps);
                        if a.outage_overall {
                            1.0
                        } else {
                            0.0
                        }
                    }
                }
            };
            values.push(value);
        }
    }

    if spec.normalization == Normalization::Max {
        let max = values.iter().copied().fold(0.0, f64::max);
        if max > 0.0 {
            values.iter_mut().for_each(|v| *v /= max);
        }
    }

    Ok(HeatmapGrid {
        metric: spec.metric,
        resolution: spec.resolution,
        normalization: spec.normalization,
        bd_height: s.bd_height,
        nx,
        ny,
        values,
        coverage_radius: radius,
    })
}
