use crate::error::Result;
use crate::field::DriveField;
use crate::model::{non_negative, positive, OscillatorModel};
use crate::response::absorption_cross_section;

/// Radiative cooling `P_rad = C (T⁶ − T₀⁶)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    /// T₀, K.
    pub ambient_temperature: f64,
    /// C, erg/(s·K⁶).
    pub radiative_coefficient: f64,
}

impl ThermalParams {
    pub fn new(ambient_temperature: f64, radiative_coefficient: f64) -> Result<Self> {
        non_negative("ambient_temperature", ambient_temperature)?;
        positive("radiative_coefficient", radiative_coefficient)?;
        Ok(Self {
            ambient_temperature,
            radiative_coefficient,
        })
    }
}

/// Temperature at which radiative cooling balances `absorbed_power` (erg/s).
pub fn equilibrium_temperature(thermal: &ThermalParams, absorbed_power: f64) -> Result<f64> {
    non_negative("absorbed_power", absorbed_power)?;
    if absorbed_power == 0.0 {
        return Ok(thermal.ambient_temperature);
    }
    let t0_6 = thermal.ambient_temperature.powi(6);
    Ok((t0_6 + absorbed_power / thermal.radiative_coefficient).powf(1.0 / 6.0))
}

/// One point of a heating curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatingPoint {
    pub intensity: f64,
    pub absorbed_power: f64,
    pub temperature: f64,
}

/// `T_eq` for each intensity, with σ_abs evaluated once at the drive's
/// polarization and frequency and the given rotation.
pub fn heating_curve(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
    thermal: &ThermalParams,
    intensities: &[f64],
) -> Result<Vec<HeatingPoint>> {
    let sigma = absorption_cross_section(model, drive, rotation)?;
    intensities
        .iter()
        .map(|&intensity| {
            non_negative("intensity", intensity)?;
            let absorbed_power = sigma * intensity;
            Ok(HeatingPoint {
                intensity,
                absorbed_power,
                temperature: equilibrium_temperature(thermal, absorbed_power)?,
            })
        })
        .collect()
}
