use std::f64::consts::PI;

use crate::error::Result;
use crate::model::{non_negative, positive};

/// Mechanical data of the spinning particle (CGS).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidBodyParams {
    /// g·cm²
    pub moment_of_inertia: f64,
    /// g/cm³
    pub mass_density: f64,
    /// cm
    pub radius: f64,
    /// K; infinite when melting is not tracked.
    pub melting_temperature: f64,
    /// erg/cm²
    pub surface_tension: f64,
}

impl RigidBodyParams {
    pub fn new(moment_of_inertia: f64, mass_density: f64, radius: f64) -> Result<Self> {
        positive("moment_of_inertia", moment_of_inertia)?;
        non_negative("mass_density", mass_density)?;
        positive("radius", radius)?;
        Ok(Self {
            moment_of_inertia,
            mass_density,
            radius,
            melting_temperature: f64::INFINITY,
            surface_tension: 0.0,
        })
    }

    /// Homogeneous sphere, `I = (2/5)MR² = (8/15)πρR⁵`.
    pub fn solid_sphere(mass_density: f64, radius: f64) -> Result<Self> {
        positive("mass_density", mass_density)?;
        positive("radius", radius)?;
        Self::new(
            8.0 / 15.0 * PI * mass_density * radius.powi(5),
            mass_density,
            radius,
        )
    }

    /// Thin cylinder spinning about a transverse axis, `I = ML²/12`.
    pub fn thin_rod(mass_density: f64, length: f64, radius: f64) -> Result<Self> {
        positive("mass_density", mass_density)?;
        positive("length", length)?;
        positive("radius", radius)?;
        let mass = mass_density * PI * radius * radius * length;
        Self::new(mass * length * length / 12.0, mass_density, radius)
    }

    pub fn with_melting_temperature(mut self, kelvin: f64) -> Result<Self> {
        positive("melting_temperature", kelvin)?;
        self.melting_temperature = kelvin;
        Ok(self)
    }

    pub fn with_surface_tension(mut self, erg_per_cm2: f64) -> Result<Self> {
        non_negative("surface_tension", erg_per_cm2)?;
        self.surface_tension = erg_per_cm2;
        Ok(self)
    }

    /// Surface energy `4πR²σ`, erg.
    pub fn surface_energy(&self) -> f64 {
        4.0 * PI * self.radius * self.radius * self.surface_tension
    }
}

/// Rotation rate at which `½IΩ² = 4πR²σ`. Order-of-magnitude only: the
/// break-up criterion is fixed up to O(1) factors.
pub fn centrifugal_burst_frequency(body: &RigidBodyParams) -> f64 {
    (2.0 * body.surface_energy() / body.moment_of_inertia).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sphere_inertia() {
        let b = RigidBodyParams::solid_sphere(2.0, 3.0).unwrap();
        let mass = 2.0 * 4.0 / 3.0 * PI * 27.0;
        assert_relative_eq!(b.moment_of_inertia, 0.4 * mass * 9.0, max_relative = 1e-14);
    }

    #[test]
    fn rod_inertia() {
        let b = RigidBodyParams::thin_rod(1.0, 10.0, 0.5).unwrap();
        let mass = PI * 0.25 * 10.0;
        assert_relative_eq!(
            b.moment_of_inertia,
            mass * 100.0 / 12.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn liquid_sphere_burst_closed_form() {
        let b = RigidBodyParams::solid_sphere(17.3, 1e-6)
            .unwrap()
            .with_surface_tension(1100.0)
            .unwrap();
        let expected = (15.0f64 * 1100.0 / (17.3 * 1e-18)).sqrt();
        assert_relative_eq!(
            centrifugal_burst_frequency(&b),
            expected,
            max_relative = 1e-12
        );
    }

    #[test]
    fn burst_scalings() {
        let b = RigidBodyParams::new(2.0, 1.0, 1.0)
            .unwrap()
            .with_surface_tension(3.0)
            .unwrap();
        let heavy = RigidBodyParams {
            moment_of_inertia: 4.0,
            ..b
        };
        assert_relative_eq!(
            centrifugal_burst_frequency(&b) / centrifugal_burst_frequency(&heavy),
            2f64.sqrt(),
            max_relative = 1e-14
        );
        let dry = RigidBodyParams {
            surface_tension: 0.0,
            ..b
        };
        assert_eq!(centrifugal_burst_frequency(&dry), 0.0);
    }
}
