//! Link-level Monte Carlo simulation of a dual-hop relay in which LED access
//! points reach a battery-free backscatter device (BD) over visible light,
//! and the BD forwards the data to a user equipment (UE) by modulating an
//! ambient RF carrier.
//!
//! The pipeline for one drop is
//! [`geometry`] → [`vlc`] → [`energy`] → [`rf`] → [`fbl`], and
//! [`montecarlo`] repeats it over random BD/UE placements to estimate
//! outage probabilities under finite-blocklength coding.
//!
//! ```
//! use vlcbc::montecarlo::{run_campaign, CampaignConfig};
//! use vlcbc::SimParams;
//!
//! let params = SimParams::baseline();
//! let stats = run_campaign(&params, &CampaignConfig { drops: 200, seed: 1, threads: None }).unwrap();
//! assert!(stats.p_out_overall <= 1.0);
//! ```

// `!(x > 0.0)` style guards are used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod energy;
pub mod error;
pub mod fbl;
pub mod geometry;
pub mod montecarlo;
pub mod output;
pub mod params;
pub mod rf;
pub mod vlc;

pub use error::{CliError, ConfigError, ModelError};
pub use params::{Scenario, SimParams, TiltFrame};
