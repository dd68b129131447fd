//! Drude particles mapped onto the oscillator, and the dipole-level torque.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::field::DriveField;
use crate::model::{non_negative, positive, OscillatorModel, UnitMode};
use crate::response::{static_polarizability, torque};

/// Drude metal sphere, `ε = 1 − ω_p²/ω(ω + iγ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeSphere {
    pub plasma_frequency: f64,
    pub damping_rate: f64,
    /// cm
    pub radius: f64,
}

/// Drude ellipsoid polarized along the axis with depolarization factor `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeEllipsoid {
    pub plasma_frequency: f64,
    pub damping_rate: f64,
    /// cm³
    pub volume: f64,
    pub depolarization: f64,
}

/// Polarizabilities along and across the rod axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnisotropicPolarizability {
    pub parallel: Complex64,
    pub perpendicular: Complex64,
}

fn linked_model(
    coupling: f64,
    natural_frequency: f64,
    damping_rate: f64,
    light_speed: f64,
    mode: UnitMode,
) -> Result<OscillatorModel> {
    let mut m = OscillatorModel::physical(coupling, natural_frequency, damping_rate, light_speed)?;
    m.mode = mode;
    Ok(m)
}

impl DrudeSphere {
    fn validate(&self) -> Result<()> {
        positive("plasma_frequency", self.plasma_frequency)?;
        positive("radius", self.radius)?;
        non_negative("damping_rate", self.damping_rate)
    }

    /// ω₀ = ω_p/√3, Q²/m = ω₀²R³, τ linked to the coupling at the given `c`.
    pub fn to_model(&self, light_speed: f64) -> Result<OscillatorModel> {
        self.validate()?;
        let w0 = self.plasma_frequency / 3f64.sqrt();
        linked_model(
            w0 * w0 * self.radius.powi(3),
            w0,
            self.damping_rate,
            light_speed,
            UnitMode::Physical,
        )
    }

    /// The same sphere viewed as an ellipsoid with `L = 1/3`.
    pub fn as_ellipsoid(&self) -> DrudeEllipsoid {
        DrudeEllipsoid {
            plasma_frequency: self.plasma_frequency,
            damping_rate: self.damping_rate,
            volume: 4.0 * PI * self.radius.powi(3) / 3.0,
            depolarization: 1.0 / 3.0,
        }
    }
}

impl DrudeEllipsoid {
    fn validate(&self) -> Result<()> {
        positive("plasma_frequency", self.plasma_frequency)?;
        positive("volume", self.volume)?;
        non_negative("damping_rate", self.damping_rate)?;
        if !(self.depolarization > 0.0 && self.depolarization < 1.0) {
            return Err(invalid(
                "depolarization",
                format!("must lie in (0, 1), got {}", self.depolarization),
            ));
        }
        Ok(())
    }

    /// Q²/m = ω_p²V/4π and ω₀ = ω_p√L.
    pub fn to_model(&self, light_speed: f64) -> Result<OscillatorModel> {
        self.validate()?;
        linked_model(
            self.plasma_frequency.powi(2) * self.volume / (4.0 * PI),
            self.plasma_frequency * self.depolarization.sqrt(),
            self.damping_rate,
            light_speed,
            UnitMode::Physical,
        )
    }
}

pub fn from_drude_sphere(sphere: &DrudeSphere, light_speed: f64) -> Result<OscillatorModel> {
    sphere.to_model(light_speed)
}

pub fn from_drude_ellipsoid(
    ellipsoid: &DrudeEllipsoid,
    light_speed: f64,
) -> Result<OscillatorModel> {
    ellipsoid.to_model(light_speed)
}

/// Torque of LCP light on a slowly rotating anisotropic dipole,
/// `M/|E|² = Im{α∥ + α⊥} − (4ω³/3c³) Re{α∥ α⊥*}`.
pub fn dipole_torque_low_rotation(
    pol: &AnisotropicPolarizability,
    omega: f64,
    field_norm_sqr: f64,
    light_speed: f64,
) -> Result<f64> {
    positive("omega", omega)?;
    let cross = (pol.parallel * pol.perpendicular.conj()).re;
    let rad = 4.0 * omega.powi(3) / (3.0 * light_speed.powi(3));
    Ok(field_norm_sqr * ((pol.parallel + pol.perpendicular).im - rad * cross))
}

/// `Im{−1/α} − 2ω³/3c³ − γω/(Q²/m)`; vanishes for a linked model.
pub fn optical_theorem_residual(model: &OscillatorModel, omega: f64) -> Result<f64> {
    let alpha = static_polarizability(model, omega)?;
    let lhs = (-1.0 / alpha).im;
    let rhs = 2.0 * omega.powi(3) / (3.0 * model.light_speed.powi(3))
        + model.damping_rate * omega / model.coupling;
    Ok(lhs - rhs)
}

/// How a rod torque is turned into a torque on the actual particle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TorqueShape {
    /// The rotating rod itself.
    #[default]
    Rod,
    /// Small absorbing sphere approximated as twice the rod torque. Only
    /// reasonable when the γ term dominates `Im{−1/α}`.
    LossySphereApprox,
}

impl TorqueShape {
    pub fn multiplier(self) -> f64 {
        match self {
            TorqueShape::Rod => 1.0,
            TorqueShape::LossySphereApprox => 2.0,
        }
    }
}

pub fn shaped_torque(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
    shape: TorqueShape,
) -> Result<f64> {
    Ok(shape.multiplier() * torque(model, drive, rotation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Polarization;
    use approx::assert_relative_eq;

    #[test]
    fn normalized_sphere() {
        let s = DrudeSphere {
            plasma_frequency: 3f64.sqrt(),
            damping_rate: 0.1,
            radius: 1.0,
        };
        let m = s.to_model(1.0).unwrap();
        assert_relative_eq!(m.natural_frequency, 1.0, max_relative = 1e-15);
        assert_relative_eq!(m.coupling, 1.0, max_relative = 1e-15);
        assert_relative_eq!(m.radiative_time, 2.0 / 3.0, max_relative = 1e-15);
        assert_eq!(m.damping_rate, 0.1);
    }

    #[test]
    fn sphere_and_ellipsoid_agree() {
        let s = DrudeSphere {
            plasma_frequency: 1.37e16,
            damping_rate: 1.05e14,
            radius: 1e-6,
        };
        let a = s.to_model(crate::SPEED_OF_LIGHT).unwrap();
        let b = s.as_ellipsoid().to_model(crate::SPEED_OF_LIGHT).unwrap();
        assert_relative_eq!(
            a.natural_frequency,
            b.natural_frequency,
            max_relative = 1e-15
        );
        assert_relative_eq!(a.coupling, b.coupling, max_relative = 1e-15);
        assert_relative_eq!(a.radiative_time, b.radiative_time, max_relative = 1e-15);
        assert_eq!(a.damping_rate, b.damping_rate);
        assert_eq!(a.light_speed, b.light_speed);
        // gold-like smoke value
        assert!((a.natural_frequency / 7.9e15 - 1.0).abs() < 0.01);
    }

    #[test]
    fn ellipsoid_frequency_scales_with_root_l() {
        let mut e = DrudeEllipsoid {
            plasma_frequency: 2.0,
            damping_rate: 0.0,
            volume: 1.0,
            depolarization: 0.04,
        };
        let w_a = e.to_model(1.0).unwrap().natural_frequency;
        e.depolarization = 0.01;
        let w_b = e.to_model(1.0).unwrap().natural_frequency;
        assert_relative_eq!(w_a / w_b, 2.0, max_relative = 1e-15);
        assert_relative_eq!(w_b, 0.2, max_relative = 1e-15);
    }

    #[test]
    fn ellipsoid_static_polarizability() {
        let e = DrudeEllipsoid {
            plasma_frequency: 5.0,
            damping_rate: 0.3,
            volume: 2.5,
            depolarization: 0.2,
        };
        let m = e.to_model(10.0).unwrap();
        let a = static_polarizability(&m, 0.0).unwrap();
        assert_relative_eq!(a.re, 2.5 / (4.0 * PI * 0.2), max_relative = 1e-14);
        assert_eq!(a.im, 0.0);
    }

    #[test]
    fn ellipsoid_rejects_bad_l() {
        for l in [0.0, 1.0, -0.2, 1.5] {
            let e = DrudeEllipsoid {
                plasma_frequency: 1.0,
                damping_rate: 0.0,
                volume: 1.0,
                depolarization: l,
            };
            assert!(e.to_model(1.0).is_err());
        }
    }

    #[test]
    fn non_absorbing_sphere_feels_no_torque() {
        let m = OscillatorModel::physical(0.5, 1.0, 0.0, 1.0).unwrap();
        let a = static_polarizability(&m, 0.7).unwrap();
        let pol = AnisotropicPolarizability {
            parallel: a,
            perpendicular: a,
        };
        let t = dipole_torque_low_rotation(&pol, 0.7, 1.0, 1.0).unwrap();
        assert!(t.abs() < 1e-15 * a.norm());
    }

    #[test]
    fn rod_torque_matches_rotating_oscillator_at_rest() {
        let m = OscillatorModel::physical(0.5, 1.0, 0.08, 1.7).unwrap();
        let w = 0.9;
        let pol = AnisotropicPolarizability {
            parallel: static_polarizability(&m, w).unwrap(),
            perpendicular: Complex64::default(),
        };
        let drive = DriveField::polarized(w, Polarization::Lcp, 1.3).unwrap();
        let a = dipole_torque_low_rotation(&pol, w, drive.field_norm_sqr(), m.light_speed).unwrap();
        let b = torque(&m, &drive, 0.0).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-12);
        assert_relative_eq!(
            a,
            drive.field_norm_sqr() * pol.parallel.im,
            max_relative = 1e-15
        );
    }

    #[test]
    fn optical_theorem_holds() {
        let m = OscillatorModel::physical(0.3, 2.0, 0.0, 1.1).unwrap();
        assert!(optical_theorem_residual(&m, 1.3).unwrap().abs() < 1e-14);
        let lossy = m.with_damping(0.4).unwrap();
        let r = optical_theorem_residual(&lossy, 1.3).unwrap();
        assert!(r.abs() < 1e-12 * (0.4 * 1.3 / 0.3));
        let inv = (-1.0 / static_polarizability(&lossy, 0.0).unwrap()).im;
        assert_eq!(inv, 0.0);
    }

    #[test]
    fn sphere_approximation_doubles_torque() {
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let d = DriveField::polarized(0.5, Polarization::Lcp, 1.0).unwrap();
        let rod = shaped_torque(&m, &d, 0.2, TorqueShape::Rod).unwrap();
        let sph = shaped_torque(&m, &d, 0.2, TorqueShape::LossySphereApprox).unwrap();
        assert_eq!(sph, 2.0 * rod);
    }
}
