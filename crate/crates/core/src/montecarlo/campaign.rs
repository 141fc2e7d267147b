//! Campaign execution and aggregation.
//!
//! Drops run in parallel but their outcomes are collected in drop order and
//! reduced sequentially, so results are bit-identical for any worker count.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::fbl::combine_outage;
use crate::montecarlo::drop::Pipeline;
use crate::montecarlo::rng::drop_rng;
use crate::montecarlo::stats::{wilson_interval, Interval, Z95};
use crate::params::SimParams;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "VLCBC_THREADS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub drops: u64,
    pub seed: u64,
    /// Worker threads; `None` defers to `VLCBC_THREADS`, then to rayon.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            drops: 10_000,
            seed: 1,
            threads: None,
        }
    }
}

/// Per-drop result kept for aggregation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DropOutcome {
    pub outage_vlc: bool,
    pub outage_bc: bool,
    pub harvested_power: f64,
}

/// Counts and sums over a set of drops.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Tally {
    pub drops: u64,
    pub vlc: u64,
    pub bc: u64,
    pub overall: u64,
    pub both: u64,
    pub harvested_sum: f64,
}

impl Tally {
    fn push(&mut self, o: &DropOutcome) {
        self.drops += 1;
        self.vlc += o.outage_vlc as u64;
        self.bc += o.outage_bc as u64;
        self.overall += (o.outage_vlc || o.outage_bc) as u64;
        self.both += (o.outage_vlc && o.outage_bc) as u64;
        self.harvested_sum += o.harvested_power;
    }
}

fn env_threads() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs `drop_fn` once per drop, each call on its own random stream.
pub fn simulate<F>(drops: u64, seed: u64, threads: Option<usize>, drop_fn: F) -> Tally
where
    F: Fn(&mut ChaCha8Rng) -> DropOutcome + Sync,
{
    let run = || -> Vec<DropOutcome> {
        (0..drops)
            .into_par_iter()
            .map(|i| drop_fn(&mut drop_rng(seed, i)))
            .collect()
    };
    let outcomes = match threads.or_else(env_threads) {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                log::warn!("cannot build a {n}-thread pool ({e}); using the global pool");
                run()
            }
        },
        None => run(),
    };
    let mut tally = Tally::default();
    for o in &outcomes {
        tally.push(o);
    }
    tally
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignStats {
    pub n_drops: u64,
    pub p_out_vlc: f64,
    pub p_out_bc: f64,
    /// Empirical frequency of the per-drop OR of both link outages.
    pub p_out_overall: f64,
    /// Independent-link composition of the two marginal frequencies.
    pub p_out_composed: f64,
    /// Empirical frequency of both links failing in the same drop.
    pub p_out_both: f64,
    /// `(1 - p_out_overall) * rate_threshold` [bit/s].
    pub avg_rate: f64,
    pub rate_threshold: f64,
    /// Mean harvested power [W].
    pub mean_harvested_power: f64,
    /// Wilson 95 % interval of `p_out_overall`.
    pub ci95: Interval,
}

impl CampaignStats {
    pub fn from_tally(t: &Tally, rate_threshold: f64) -> Self {
        let n = t.drops.max(1) as f64;
        let p_out_vlc = t.vlc as f64 / n;
        let p_out_bc = t.bc as f64 / n;
        let p_out_overall = t.overall as f64 / n;
        CampaignStats {
            n_drops: t.drops,
            p_out_vlc,
            p_out_bc,
            p_out_overall,
            p_out_composed: combine_outage(p_out_vlc, p_out_bc).expect("frequencies lie in [0, 1]"),
            p_out_both: t.both as f64 / n,
            avg_rate: (1.0 - p_out_overall) * rate_threshold,
            rate_threshold,
            mean_harvested_power: t.harvested_sum / n,
            ci95: wilson_interval(t.overall, t.drops, Z95),
        }
    }
}

pub fn run_campaign(params: &SimParams, config: &CampaignConfig) -> Result<CampaignStats, ModelError> {
    if config.drops == 0 {
        return Err(ModelError::domain("drops", 0.0, "[1, inf)"));
    }
    let pipe = Pipeline::new(params)?;
    let tally = simulate(config.drops, config.seed, config.threads, |rng| {
        let rec = pipe.run_drop(rng);
        DropOutcome {
            outage_vlc: rec.assessment.outage_vlc,
            outage_bc: rec.assessment.outage_bc,
            harvested_power: rec.harvested_power,
        }
    });
    Ok(CampaignStats::from_tally(&tally, params.fbl.rate_threshold))
}
