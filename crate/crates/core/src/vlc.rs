//! First hop: LED access points to the photovoltaic receiver of the BD.

use serde::{Deserialize, Serialize};

use crate::geometry::{link_angles, DevicePose, LedAp};
use crate::params::Scenario;

/// How the SINR ratio is formed from photocurrents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SinrConvention {
    /// First-power ratio of received optical signal to interference plus noise.
    #[default]
    #[serde(alias = "paper")]
    FirstPower,
    /// Ratio of squared photocurrents (electrical power).
    Squared,
}

/// Whether the non-dedicated LEDs interfere with the dedicated link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum InterferenceMode {
    #[default]
    Concurrent,
    TdmClean,
}

/// Only symmetric on-off keying is modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModulationDepth {
    #[default]
    SymmetricOok,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VlcParams {
    /// Photodetector active area [m^2].
    pub pd_area: f64,
    /// LED electrical-to-optical conversion [W/A].
    pub eta_eo: f64,
    /// Photodetector responsivity [A/W].
    pub eta_oe: f64,
    pub i_bias: f64,
    pub i_min: f64,
    pub i_max: f64,
    /// Operational bandwidth [Hz].
    pub bandwidth: f64,
    /// Noise power spectral density, linear [W/Hz].
    pub noise_psd: f64,
    pub mod_depth: ModulationDepth,
    pub sinr_convention: SinrConvention,
    pub interference: InterferenceMode,
}

impl VlcParams {
    /// Largest OOK swing that keeps the LED drive inside its linear region.
    pub fn s_max(&self) -> f64 {
        (self.i_bias - self.i_min).min(self.i_max - self.i_bias).max(0.0)
    }

    /// Mean optical power of one LED [W].
    pub fn led_optical_power(&self) -> f64 {
        self.eta_eo * self.i_bias
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_psd * self.bandwidth
    }
}

/// Line-of-sight DC gain between one LED and the device. Zero outside the
/// receiver's field of view or when the LED is not above the device.
pub fn channel_dc_gain(led: &LedAp, bd: &DevicePose, pd_area: f64, fov: f64) -> f64 {
    let Ok(a) = link_angles(led, bd) else {
        return 0.0;
    };
    if a.incidence.abs() > fov || a.irradiance >= std::f64::consts::FRAC_PI_2 {
        return 0.0;
    }
    let nu = led.lambertian_index();
    (nu + 1.0) * pd_area / (2.0 * std::f64::consts::PI * a.distance * a.distance)
        * a.irradiance.cos().powf(nu)
        * a.incidence.cos()
}

/// DC gains of every LED in the scenario, in scenario order.
pub fn channel_gains(scenario: &Scenario, bd: &DevicePose, params: &VlcParams) -> Vec<f64> {
    scenario
        .leds
        .iter()
        .map(|led| channel_dc_gain(led, bd, params.pd_area, scenario.fov))
        .collect()
}

/// DC photocurrent collected from all LEDs, interferers included.
pub fn dc_photocurrent(gains: &[f64], params: &VlcParams) -> f64 {
    params.eta_oe * gains.iter().map(|h| params.eta_eo * h * params.i_bias).sum::<f64>()
}

/// Amplitude of the dedicated LED's data-bearing photocurrent after the DC
/// is removed. OOK with swing `s_max` sits at `±s_max/2` about the bias.
pub fn ac_signal_amplitude(dedicated_gain: f64, params: &VlcParams) -> f64 {
    params.eta_oe * params.eta_eo * dedicated_gain * (params.s_max() / 2.0)
}

/// Interference-limited SINR of the dedicated link.
pub fn vlc_sinr(gains: &[f64], dedicated: usize, params: &VlcParams) -> f64 {
    let h_ded = gains[dedicated];
    if h_ded <= 0.0 {
        return 0.0;
    }
    let p = params.led_optical_power();
    let signal = params.eta_oe * p * h_ded;
    let interference = match params.interference {
        InterferenceMode::TdmClean => 0.0,
        InterferenceMode::Concurrent => {
            params.eta_oe
                * gains
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != dedicated)
                    .map(|(_, h)| p * h)
                    .sum::<f64>()
        }
    };
    match params.sinr_convention {
        SinrConvention::FirstPower => signal / (interference + params.noise_power()),
        SinrConvention::Squared => signal * signal / (interference * interference + params.noise_power()),
    }
}

/// Optical quantities of one drop.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VlcLinkState {
    pub gains: Vec<f64>,
    pub sinr: f64,
    pub i_ac_amp: f64,
    pub i_dc: f64,
}

impl VlcLinkState {
    pub fn evaluate(scenario: &Scenario, bd: &DevicePose, params: &VlcParams) -> Self {
        let gains = channel_gains(scenario, bd, params);
        Self::from_gains(gains, scenario.dedicated_led, params)
    }

    pub fn from_gains(gains: Vec<f64>, dedicated: usize, params: &VlcParams) -> Self {
        let sinr = vlc_sinr(&gains, dedicated, params);
        let i_ac_amp = ac_signal_amplitude(gains[dedicated], params);
        let i_dc = dc_photocurrent(&gains, params);
        VlcLinkState {
            gains,
            sinr,
            i_ac_amp,
            i_dc,
        }
    }

    pub fn dedicated_gain(&self, dedicated: usize) -> f64 {
        self.gains[dedicated]
    }
}
