//! Drop sampling, campaigns, sweeps and heatmaps.

pub mod campaign;
pub mod drop;
pub mod heatmap;
pub mod rng;
pub mod stats;
pub mod sweep;

pub use campaign::{run_campaign, simulate, CampaignConfig, CampaignStats, DropOutcome, Tally, THREADS_ENV};
pub use drop::{oriented_pose, placement_radius, DropDraws, DropRecord, Pipeline};
pub use heatmap::{compute_heatmap, HeatmapGrid, HeatmapMetric, HeatmapSpec, Normalization};
pub use rng::{drop_rng, RNG_ALGORITHM};
pub use stats::{wilson_interval, wilson_std_error, Interval, Z95};
pub use sweep::{linspace, logspace, run_sweep, SweepAxis, SweepRow};
