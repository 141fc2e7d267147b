//! The static world description and the full parameter bundle.

use serde::{Deserialize, Serialize};

use crate::energy::EnergyParams;
use crate::error::ModelError;
use crate::fbl::{q_inv, FblParams};
use crate::geometry::{LedAp, Point3};
use crate::rf::{db_to_linear, Environment, PathlossMode, RfParams};
use crate::vlc::{InterferenceMode, ModulationDepth, SinrConvention, VlcParams};

/// Room, access points, RF source and device heights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub room_w: f64,
    pub room_l: f64,
    pub leds: Vec<LedAp>,
    /// RF source position, including its mounting height.
    pub rfs_position: Point3,
    pub dedicated_led: usize,
    pub bd_height: f64,
    pub ue_height: f64,
    /// Receiver field-of-view semi-angle [rad].
    pub fov: f64,
    /// Signed tilt of the BD normal from vertical [rad].
    pub bd_tilt: f64,
    pub tilt_frame: TiltFrame,
}

/// Vertical plane in which the BD normal is tilted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TiltFrame {
    /// The room's x-z plane; positive tilt leans toward +x.
    #[default]
    FixedAzimuth,
    /// The plane through the BD and its dedicated LED; positive tilt leans
    /// toward the LED.
    TowardDedicated,
}

/// Baseline 3x3 LED grid, 3 m pitch.
pub const BASELINE_LED_XY: [(f64, f64); 9] = [
    (2.0, 2.0),
    (5.0, 2.0),
    (8.0, 2.0),
    (2.0, 5.0),
    (5.0, 5.0),
    (8.0, 5.0),
    (2.0, 8.0),
    (5.0, 8.0),
    (8.0, 8.0),
];

impl Scenario {
    pub fn dedicated(&self) -> &LedAp {
        &self.leds[self.dedicated_led]
    }

    pub fn led_height(&self) -> f64 {
        self.dedicated().position.z
    }

    pub fn contains_xy(&self, p: &Point3) -> bool {
        (0.0..=self.room_w).contains(&p.x) && (0.0..=self.room_l).contains(&p.y)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.room_w > 0.0 && self.room_l > 0.0) {
            return Err(ModelError::Geometry("room has zero area"));
        }
        if self.dedicated_led >= self.leds.len() {
            return Err(ModelError::Geometry("dedicated LED index out of range"));
        }
        if self.leds.iter().any(|l| !self.contains_xy(&l.position)) || !self.contains_xy(&self.rfs_position) {
            return Err(ModelError::Geometry("node outside the room"));
        }
        if !(self.fov > 0.0 && self.fov <= std::f64::consts::FRAC_PI_2) {
            return Err(ModelError::domain("fov", self.fov, "(0, pi/2]"));
        }
        if !(self.bd_tilt.abs() < std::f64::consts::FRAC_PI_2) {
            return Err(ModelError::domain("bd_tilt", self.bd_tilt, "(-pi/2, pi/2)"));
        }
        if self.leds.iter().any(|l| l.position.z <= self.bd_height) {
            return Err(ModelError::Geometry("BD is not below every LED"));
        }
        Ok(())
    }
}

/// Every model parameter, in internal (linear SI) units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimParams {
    pub scenario: Scenario,
    pub vlc: VlcParams,
    pub energy: EnergyParams,
    pub rf: RfParams,
    pub fbl: FblParams,
}

impl SimParams {
    /// The reference simulation profile.
    pub fn baseline() -> Self {
        let semi_angle = 60f64.to_radians();
        let leds = BASELINE_LED_XY
            .iter()
            .map(|&(x, y)| LedAp::new(Point3::new(x, y, 2.5), semi_angle).expect("valid semi-angle"))
            .collect();
        let bandwidth = 50e3;
        let noise_psd = db_to_linear(-174.0) * 1e-3;
        SimParams {
            scenario: Scenario {
                room_w: 10.0,
                room_l: 10.0,
                leds,
                rfs_position: Point3::new(5.0, 5.0, 3.0),
                dedicated_led: 4,
                bd_height: 1.5,
                ue_height: 1.5,
                fov: 60f64.to_radians(),
                bd_tilt: 0.0,
                tilt_frame: TiltFrame::FixedAzimuth,
            },
            vlc: VlcParams {
                pd_area: 0.05,
                eta_eo: 20.0,
                eta_oe: 0.5,
                i_bias: 0.75,
                i_min: 0.0,
                i_max: 1.5,
                bandwidth,
                noise_psd,
                mod_depth: ModulationDepth::SymmetricOok,
                sinr_convention: SinrConvention::FirstPower,
                interference: InterferenceMode::Concurrent,
            },
            energy: EnergyParams {
                fill_factor: 0.75,
                thermal_voltage: 25e-3,
                dark_current: 1e-9,
                drop_duration: 1.0,
            },
            rf: RfParams {
                carrier_power: db_to_linear(23.0) * 1e-3,
                carrier_freq_ghz: 2.45,
                gain_t: db_to_linear(8.0),
                gain_r: db_to_linear(3.0),
                gain_bd: db_to_linear(1.5),
                pol_mismatch_f: 0.5,
                pol_mismatch_b: 0.5,
                mod_factor: 0.5,
                object_penalty: db_to_linear(0.0),
                sigma_los_db: 3.0,
                sigma_nlos_db: 8.03,
                shadowing: true,
                environment: Environment::Open,
                pathloss_mode: PathlossMode::Expected,
                noise_psd,
                bandwidth,
            },
            fbl: FblParams {
                blocklength: 64,
                target_error: 1e-3,
                code_rate: 0.75,
                rate_threshold: 10e3,
                bandwidth,
                code_rate_scaling: true,
            },
        }
    }

    /// Checks the cross-module invariants that the config loader cannot see
    /// field by field.
    pub fn validate(&self) -> Result<(), ModelError> {
        self.scenario.validate()?;
        let v = &self.vlc;
        if !(v.i_min <= v.i_bias && v.i_bias <= v.i_max) {
            return Err(ModelError::domain("i_bias", v.i_bias, "[i_min, i_max]"));
        }
        q_inv(self.fbl.target_error)?;
        if self.fbl.blocklength == 0 {
            return Err(ModelError::domain("blocklength", 0.0, "[1, inf)"));
        }
        Ok(())
    }
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams::baseline()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_is_valid() {
        let p = SimParams::baseline();
        p.validate().unwrap();
        assert_eq!(p.scenario.dedicated().position, Point3::new(5.0, 5.0, 2.5));
        assert_eq!(p.vlc.s_max(), 0.75);
        assert!((p.rf.carrier_power - 0.199_526_231_496_887_96).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_scenarios() {
        let mut p = SimParams::baseline();
        p.scenario.dedicated_led = 9;
        assert!(p.validate().is_err());
        let mut p = SimParams::baseline();
        p.scenario.bd_height = 2.5;
        assert!(p.validate().is_err());
        let mut p = SimParams::baseline();
        p.vlc.i_bias = 2.0;
        assert!(p.validate().is_err());
    }
}
