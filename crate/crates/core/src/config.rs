//! TOML configuration files.
//!
//! Every field is optional and defaults to the baseline profile. Quantities
//! that are conventionally quoted in logarithmic units (dBm, dBi, dB) stay in
//! those units in the file and are converted to linear values by
//! [`ConfigFile::to_params`].
//!
//! ```toml
//! [scenario]
//! bd_height_m = 1.7
//! fov_deg = 50
//!
//! [rf]
//! environment = "mixed"
//! pathloss = "bernoulli"
//!
//! [fbl]
//! code_rate = 0.5
//!
//! [campaign]
//! drops = 100000
//! seed = 7
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::energy::EnergyParams;
use crate::error::ConfigError;
use crate::fbl::FblParams;
use crate::geometry::{LedAp, Point3};
use crate::montecarlo::{CampaignConfig, RNG_ALGORITHM};
use crate::params::{Scenario, SimParams, TiltFrame, BASELINE_LED_XY};
use crate::rf::{db_to_linear, Environment, PathlossMode, RfParams};
use crate::vlc::{InterferenceMode, ModulationDepth, SinrConvention, VlcParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSection {
    pub room_width_m: f64,
    pub room_length_m: f64,
    pub led_height_m: f64,
    pub bd_height_m: f64,
    pub rfs_height_m: f64,
    pub ue_height_m: f64,
    pub led_positions_m: Vec<[f64; 2]>,
    pub rfs_position_m: [f64; 2],
    /// Index into `led_positions_m`.
    pub dedicated_led: usize,
    pub led_semi_angle_deg: f64,
    pub fov_deg: f64,
    /// Signed BD tilt from vertical.
    pub bd_tilt_deg: f64,
    pub tilt_frame: TiltFrame,
}

impl Default for ScenarioSection {
    fn default() -> Self {
        ScenarioSection {
            room_width_m: 10.0,
            room_length_m: 10.0,
            led_height_m: 2.5,
            bd_height_m: 1.5,
            rfs_height_m: 3.0,
            ue_height_m: 1.5,
            led_positions_m: BASELINE_LED_XY.iter().map(|&(x, y)| [x, y]).collect(),
            rfs_position_m: [5.0, 5.0],
            dedicated_led: 4,
            led_semi_angle_deg: 60.0,
            fov_deg: 60.0,
            bd_tilt_deg: 0.0,
            tilt_frame: TiltFrame::FixedAzimuth,
        }
    }
}

/// Quantities shared by both hops.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemSection {
    pub bandwidth_hz: f64,
    pub noise_psd_dbm_per_hz: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        SystemSection {
            bandwidth_hz: 50e3,
            noise_psd_dbm_per_hz: -174.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VlcSection {
    pub pd_area_m2: f64,
    pub eta_eo_w_per_a: f64,
    pub responsivity_a_per_w: f64,
    pub bias_current_a: f64,
    pub min_current_a: f64,
    pub max_current_a: f64,
    pub modulation: ModulationDepth,
    pub sinr_convention: SinrConvention,
    pub interference: InterferenceMode,
}

impl Default for VlcSection {
    fn default() -> Self {
        VlcSection {
            pd_area_m2: 0.05,
            eta_eo_w_per_a: 20.0,
            responsivity_a_per_w: 0.5,
            bias_current_a: 0.75,
            min_current_a: 0.0,
            max_current_a: 1.5,
            modulation: ModulationDepth::SymmetricOok,
            sinr_convention: SinrConvention::FirstPower,
            interference: InterferenceMode::Concurrent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnergySection {
    pub fill_factor: f64,
    pub thermal_voltage_v: f64,
    pub dark_current_a: f64,
    pub drop_duration_s: f64,
}

impl Default for EnergySection {
    fn default() -> Self {
        EnergySection {
            fill_factor: 0.75,
            thermal_voltage_v: 25e-3,
            dark_current_a: 1e-9,
            drop_duration_s: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RfSection {
    pub carrier_power_dbm: f64,
    pub carrier_freq_ghz: f64,
    pub gain_rfs_dbi: f64,
    pub gain_ue_dbi: f64,
    pub gain_bd_dbi: f64,
    pub pol_mismatch_forward: f64,
    pub pol_mismatch_back: f64,
    pub modulation_factor: f64,
    pub object_penalty_db: f64,
    pub sigma_los_db: f64,
    pub sigma_nlos_db: f64,
    pub shadowing: bool,
    pub environment: Environment,
    pub pathloss: PathlossMode,
}

impl Default for RfSection {
    fn default() -> Self {
        RfSection {
            carrier_power_dbm: 23.0,
            carrier_freq_ghz: 2.45,
            gain_rfs_dbi: 8.0,
            gain_ue_dbi: 3.0,
            gain_bd_dbi: 1.5,
            pol_mismatch_forward: 0.5,
            pol_mismatch_back: 0.5,
            modulation_factor: 0.5,
            object_penalty_db: 0.0,
            sigma_los_db: 3.0,
            sigma_nlos_db: 8.03,
            shadowing: true,
            environment: Environment::Open,
            pathloss: PathlossMode::Expected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FblSection {
    pub blocklength: u64,
    pub target_error: f64,
    pub code_rate: f64,
    pub rate_threshold_bps: f64,
    pub code_rate_scaling: bool,
}

impl Default for FblSection {
    fn default() -> Self {
        FblSection {
            blocklength: 64,
            target_error: 1e-3,
            code_rate: 0.75,
            rate_threshold_bps: 10e3,
            code_rate_scaling: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignSection {
    pub drops: u64,
    pub seed: u64,
    /// Informational; must name the generator this build uses.
    pub rng: String,
}

impl Default for CampaignSection {
    fn default() -> Self {
        let c = CampaignConfig::default();
        CampaignSection {
            drops: c.drops,
            seed: c.seed,
            rng: RNG_ALGORITHM.to_string(),
        }
    }
}

/// The on-disk configuration.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub scenario: ScenarioSection,
    pub system: SystemSection,
    pub vlc: VlcSection,
    pub energy: EnergySection,
    pub rf: RfSection,
    pub fbl: FblSection,
    pub campaign: CampaignSection,
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ConfigFile, ConfigError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let cfg = ConfigFile::from_toml(&text)?;
    cfg.to_params()?;
    Ok(cfg)
}

fn check(ok: bool, field: &str, reason: &str) -> Result<(), ConfigError> {
    if ok {
        Ok(())
    } else {
        Err(ConfigError::invalid(field, reason))
    }
}

fn positive(v: f64, field: &str) -> Result<(), ConfigError> {
    check(
        v > 0.0 && v.is_finite(),
        field,
        &format!("must be a positive finite number, got {v}"),
    )
}

fn unit_interval(v: f64, field: &str) -> Result<(), ConfigError> {
    check(v > 0.0 && v <= 1.0, field, &format!("must lie in (0, 1], got {v}"))
}

impl ConfigFile {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn campaign(&self) -> CampaignConfig {
        CampaignConfig {
            drops: self.campaign.drops,
            seed: self.campaign.seed,
            threads: None,
        }
    }

    /// Validates every field and converts to internal units.
    pub fn to_params(&self) -> Result<SimParams, ConfigError> {
        let s = &self.scenario;
        positive(s.room_width_m, "scenario.room_width_m")?;
        positive(s.room_length_m, "scenario.room_length_m")?;
        positive(s.led_height_m, "scenario.led_height_m")?;
        check(
            s.bd_height_m >= 0.0 && s.bd_height_m < s.led_height_m,
            "scenario.bd_height_m",
            "must lie in [0, led_height_m)",
        )?;
        check(s.ue_height_m >= 0.0, "scenario.ue_height_m", "must be non-negative")?;
        check(s.rfs_height_m >= 0.0, "scenario.rfs_height_m", "must be non-negative")?;
        check(
            !s.led_positions_m.is_empty(),
            "scenario.led_positions_m",
            "needs at least one LED",
        )?;
        let inside = |p: &[f64; 2]| (0.0..=s.room_width_m).contains(&p[0]) && (0.0..=s.room_length_m).contains(&p[1]);
        for (i, p) in s.led_positions_m.iter().enumerate() {
            check(
                inside(p),
                &format!("scenario.led_positions_m[{i}]"),
                "lies outside the room",
            )?;
        }
        check(
            inside(&s.rfs_position_m),
            "scenario.rfs_position_m",
            "lies outside the room",
        )?;
        check(
            s.dedicated_led < s.led_positions_m.len(),
            "scenario.dedicated_led",
            "is not an index into led_positions_m",
        )?;
        check(
            s.led_semi_angle_deg > 0.0 && s.led_semi_angle_deg < 90.0,
            "scenario.led_semi_angle_deg",
            "must lie in (0, 90)",
        )?;
        check(
            s.fov_deg > 0.0 && s.fov_deg <= 90.0,
            "scenario.fov_deg",
            "must lie in (0, 90]",
        )?;
        check(
            s.bd_tilt_deg.abs() < 90.0,
            "scenario.bd_tilt_deg",
            "must lie in (-90, 90)",
        )?;

        let sys = &self.system;
        positive(sys.bandwidth_hz, "system.bandwidth_hz")?;
        check(
            sys.noise_psd_dbm_per_hz.is_finite(),
            "system.noise_psd_dbm_per_hz",
            "must be finite",
        )?;

        let v = &self.vlc;
        positive(v.pd_area_m2, "vlc.pd_area_m2")?;
        positive(v.eta_eo_w_per_a, "vlc.eta_eo_w_per_a")?;
        positive(v.responsivity_a_per_w, "vlc.responsivity_a_per_w")?;
        positive(v.bias_current_a, "vlc.bias_current_a")?;
        check(v.min_current_a >= 0.0, "vlc.min_current_a", "must be non-negative")?;
        check(
            v.min_current_a <= v.bias_current_a && v.bias_current_a <= v.max_current_a,
            "vlc.bias_current_a",
            "must lie in [min_current_a, max_current_a]",
        )?;

        let e = &self.energy;
        unit_interval(e.fill_factor, "energy.fill_factor")?;
        positive(e.thermal_voltage_v, "energy.thermal_voltage_v")?;
        positive(e.dark_current_a, "energy.dark_current_a")?;
        positive(e.drop_duration_s, "energy.drop_duration_s")?;

        let r = &self.rf;
        check(
            r.carrier_power_dbm.is_finite(),
            "rf.carrier_power_dbm",
            "must be finite",
        )?;
        positive(r.carrier_freq_ghz, "rf.carrier_freq_ghz")?;
        for (val, name) in [
            (r.gain_rfs_dbi, "rf.gain_rfs_dbi"),
            (r.gain_ue_dbi, "rf.gain_ue_dbi"),
            (r.gain_bd_dbi, "rf.gain_bd_dbi"),
        ] {
            check(val.is_finite(), name, "must be finite")?;
        }
        unit_interval(r.pol_mismatch_forward, "rf.pol_mismatch_forward")?;
        unit_interval(r.pol_mismatch_back, "rf.pol_mismatch_back")?;
        unit_interval(r.modulation_factor, "rf.modulation_factor")?;
        check(r.object_penalty_db >= 0.0, "rf.object_penalty_db", "must be >= 0 dB")?;
        positive(r.sigma_los_db, "rf.sigma_los_db")?;
        positive(r.sigma_nlos_db, "rf.sigma_nlos_db")?;

        let f = &self.fbl;
        check(f.blocklength >= 1, "fbl.blocklength", "must be at least 1")?;
        check(
            f.target_error > 0.0 && f.target_error < 1.0,
            "fbl.target_error",
            &format!("must lie in (0, 1), got {}", f.target_error),
        )?;
        unit_interval(f.code_rate, "fbl.code_rate")?;
        positive(f.rate_threshold_bps, "fbl.rate_threshold_bps")?;

        check(self.campaign.drops >= 1, "campaign.drops", "must be at least 1")?;
        check(
            self.campaign.rng == RNG_ALGORITHM,
            "campaign.rng",
            &format!("this build only provides `{RNG_ALGORITHM}`"),
        )?;

        let semi = s.led_semi_angle_deg.to_radians();
        let leds = s
            .led_positions_m
            .iter()
            .map(|p| LedAp::new(Point3::new(p[0], p[1], s.led_height_m), semi))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ConfigError::invalid("scenario.led_semi_angle_deg", e.to_string()))?;
        let noise_psd = db_to_linear(sys.noise_psd_dbm_per_hz) * 1e-3;
        let params = SimParams {
            scenario: Scenario {
                room_w: s.room_width_m,
                room_l: s.room_length_m,
                leds,
                rfs_position: Point3::new(s.rfs_position_m[0], s.rfs_position_m[1], s.rfs_height_m),
                dedicated_led: s.dedicated_led,
                bd_height: s.bd_height_m,
                ue_height: s.ue_height_m,
                fov: s.fov_deg.to_radians(),
                bd_tilt: s.bd_tilt_deg.to_radians(),
                tilt_frame: s.tilt_frame,
            },
            vlc: VlcParams {
                pd_area: v.pd_area_m2,
                eta_eo: v.eta_eo_w_per_a,
                eta_oe: v.responsivity_a_per_w,
                i_bias: v.bias_current_a,
                i_min: v.min_current_a,
                i_max: v.max_current_a,
                bandwidth: sys.bandwidth_hz,
                noise_psd,
                mod_depth: v.modulation,
                sinr_convention: v.sinr_convention,
                interference: v.interference,
            },
            energy: EnergyParams {
                fill_factor: e.fill_factor,
                thermal_voltage: e.thermal_voltage_v,
                dark_current: e.dark_current_a,
                drop_duration: e.drop_duration_s,
            },
            rf: RfParams {
                carrier_power: db_to_linear(r.carrier_power_dbm) * 1e-3,
                carrier_freq_ghz: r.carrier_freq_ghz,
                gain_t: db_to_linear(r.gain_rfs_dbi),
                gain_r: db_to_linear(r.gain_ue_dbi),
                gain_bd: db_to_linear(r.gain_bd_dbi),
                pol_mismatch_f: r.pol_mismatch_forward,
                pol_mismatch_b: r.pol_mismatch_back,
                mod_factor: r.modulation_factor,
                object_penalty: db_to_linear(r.object_penalty_db),
                sigma_los_db: r.sigma_los_db,
                sigma_nlos_db: r.sigma_nlos_db,
                shadowing: r.shadowing,
                environment: r.environment,
                pathloss_mode: r.pathloss,
                noise_psd,
                bandwidth: sys.bandwidth_hz,
            },
            fbl: FblParams {
                blocklength: f.blocklength,
                target_error: f.target_error,
                code_rate: f.code_rate,
                rate_threshold: f.rate_threshold_bps,
                bandwidth: sys.bandwidth_hz,
                code_rate_scaling: f.code_rate_scaling,
            },
        };
        params
            .validate()
            .map_err(|e| ConfigError::invalid("scenario", e.to_string()))?;
        Ok(params)
    }
}
