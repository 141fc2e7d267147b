//! Photovoltaic harvesting from the DC part of the received light.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyParams {
    pub fill_factor: f64,
    /// Thermal voltage [V].
    pub thermal_voltage: f64,
    /// Dark saturation current [A].
    pub dark_current: f64,
    /// Duration of one drop [s], used to turn harvested power into energy.
    pub drop_duration: f64,
}

pub fn open_circuit_voltage(i_dc: f64, params: &EnergyParams) -> f64 {
    params.thermal_voltage * (i_dc / params.dark_current).ln_1p()
}

/// Harvested electrical power [W].
pub fn harvested_power(i_dc: f64, params: &EnergyParams) -> f64 {
    params.fill_factor * i_dc * open_circuit_voltage(i_dc, params)
}

/// Energy collected over one drop [J].
pub fn harvested_energy(i_dc: f64, params: &EnergyParams) -> f64 {
    harvested_power(i_dc, params) * params.drop_duration
}
