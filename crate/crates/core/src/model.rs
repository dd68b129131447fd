//! Oscillator parameters and unit conventions.
//!
//! Everything is Gaussian-CGS. A *physical* model ties the radiative time to
//! the coupling through `τ = 2 (Q²/m) / 3c³`. A *normalized* model fixes
//! `ω₀ = c = Q²/m = 1` and leaves `τ` (then read as `τ ω₀`) free, which is how
//! the dimensionless maps are usually drawn.

use crate::error::{invalid, Result};

/// Speed of light in vacuum, cm/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    Physical,
    Normalized,
}

/// Effective spring describing the induced dipole along the rod axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    /// Q²/m, cm³/s².
    pub coupling: f64,
    /// ω₀, rad/s.
    pub natural_frequency: f64,
    /// γ, rad/s.
    pub damping_rate: f64,
    /// τ, s.
    pub radiative_time: f64,
    /// c, cm/s.
    pub light_speed: f64,
    pub mode: UnitMode,
}

impl OscillatorModel {
    /// Physical model in Gaussian units; `τ` is derived from the coupling.
    pub fn physical(
        coupling: f64,
        natural_frequency: f64,
        damping_rate: f64,
        light_speed: f64,
    ) -> Result<Self> {
        let radiative_time = radiative_time(coupling, light_speed);
        Self::checked(
            coupling,
            natural_frequency,
            damping_rate,
            radiative_time,
            light_speed,
            UnitMode::Physical,
        )
    }

    /// Physical model with the vacuum speed of light.
    pub fn physical_vacuum(
        coupling: f64,
        natural_frequency: f64,
        damping_rate: f64,
    ) -> Result<Self> {
        Self::physical(coupling, natural_frequency, damping_rate, SPEED_OF_LIGHT)
    }

    /// Dimensionless model: `ω₀ = c = Q²/m = 1`, with γ and τ in units of ω₀.
    pub fn normalized(damping_rate: f64, radiative_time: f64) -> Result<Self> {
        Self::checked(
            1.0,
            1.0,
            damping_rate,
            radiative_time,
            1.0,
            UnitMode::Normalized,
        )
    }

    /// Fully explicit construction. `τ` is not tied to the coupling, so the
    /// model is tagged as normalized.
    pub fn new(
        coupling: f64,
        natural_frequency: f64,
        damping_rate: f64,
        radiative_time: f64,
        light_speed: f64,
    ) -> Result<Self> {
        Self::checked(
            coupling,
            natural_frequency,
            damping_rate,
            radiative_time,
            light_speed,
            UnitMode::Normalized,
        )
    }

    fn checked(
        coupling: f64,
        natural_frequency: f64,
        damping_rate: f64,
        radiative_time: f64,
        light_speed: f64,
        mode: UnitMode,
    ) -> Result<Self> {
        positive("coupling", coupling)?;
        positive("natural_frequency", natural_frequency)?;
        positive("light_speed", light_speed)?;
        non_negative("damping_rate", damping_rate)?;
        non_negative("radiative_time", radiative_time)?;
        Ok(Self {
            coupling,
            natural_frequency,
            damping_rate,
            radiative_time,
            light_speed,
            mode,
        })
    }

    /// Same particle with a different intrinsic damping rate.
    pub fn with_damping(self, damping_rate: f64) -> Result<Self> {
        non_negative("damping_rate", damping_rate)?;
        Ok(Self {
            damping_rate,
            ..self
        })
    }

    /// Q²/mc, the prefactor shared by every cross section (cm²·s⁻¹ in physical mode).
    pub fn area_prefactor(&self) -> f64 {
        self.coupling / self.light_speed
    }

    /// Q²γ/mcω₀², the unit of the mechanical and absorption maps.
    pub fn dissipative_unit(&self) -> f64 {
        self.coupling * self.damping_rate / (self.light_speed * self.natural_frequency.powi(2))
    }

    /// Q²τ/mc, the unit of the scattering maps.
    pub fn radiative_unit(&self) -> f64 {
        self.coupling * self.radiative_time / self.light_speed
    }
}

/// τ = 2(Q²/m)/3c³.
pub fn radiative_time(coupling: f64, light_speed: f64) -> f64 {
    2.0 * coupling / (3.0 * light_speed.powi(3))
}

pub(crate) fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and > 0, got {v}")))
    }
}

pub(crate) fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and >= 0, got {v}")))
    }
}

pub(crate) fn finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn physical_mode_links_tau() {
        let m = OscillatorModel::physical(3.0, 1.0, 0.1, 2.0).unwrap();
        assert_eq!(m.radiative_time, 2.0 * 3.0 / (3.0 * 8.0));
        assert_eq!(m.mode, UnitMode::Physical);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(OscillatorModel::normalized(-0.1, 0.0).is_err());
        assert!(OscillatorModel::normalized(0.1, -1e-3).is_err());
        assert!(OscillatorModel::new(0.0, 1.0, 0.1, 0.0, 1.0).is_err());
        assert!(OscillatorModel::new(1.0, f64::NAN, 0.1, 0.0, 1.0).is_err());
        assert!(OscillatorModel::new(1.0, 1.0, 0.1, 0.0, 0.0).is_err());
    }

    #[test]
    fn figure_units_in_normalized_mode() {
        let m = OscillatorModel::normalized(0.1, 1e-4).unwrap();
        assert_eq!(m.dissipative_unit(), 0.1);
        assert_eq!(m.radiative_unit(), 1e-4);
    }
}
