//! Monochromatic drive `E = (Ex x̂ + Ey ŷ) e^{-iωt} + c.c.`
//!
//! Helicity convention: `E₊ = Ex + iEy` and `E₋ = Ex − iEy`. Left circular
//! polarization (LCP) is the state with `E₊ = 0`, i.e. `Ey = i Ex`. Texts
//! disagree on which hand is which, so code that builds fields should go
//! through [`Polarization`] rather than hand-rolled amplitudes.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::model::{finite, positive};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarization {
    /// `E₊ = 0`.
    Lcp,
    /// `E₋ = 0`.
    Rcp,
    /// Linear along x̂.
    Linear,
    /// Raw Jones vector; rescaled to the requested amplitude.
    Explicit { ex: Complex64, ey: Complex64 },
}

impl Polarization {
    /// Unit-norm Jones vector `(Ex, Ey)`.
    pub fn jones(&self) -> Result<(Complex64, Complex64)> {
        let i = Complex64::i();
        let s = FRAC_1_SQRT_2;
        match *self {
            Polarization::Lcp => Ok((Complex64::new(s, 0.0), i * s)),
            Polarization::Rcp => Ok((Complex64::new(s, 0.0), -i * s)),
            Polarization::Linear => Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))),
            Polarization::Explicit { ex, ey } => {
                let norm = (ex.norm_sqr() + ey.norm_sqr()).sqrt();
                if !(norm.is_finite() && norm > 0.0) {
                    return Err(invalid(
                        "polarization",
                        "explicit Jones vector must be nonzero",
                    ));
                }
                Ok((ex / norm, ey / norm))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Polarization::Lcp => "lcp",
            Polarization::Rcp => "rcp",
            Polarization::Linear => "linear",
            Polarization::Explicit { .. } => "explicit",
        }
    }
}

/// Incident plane wave of frequency ω (signed, rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveField {
    pub frequency: f64,
    pub ex: Complex64,
    pub ey: Complex64,
}

impl DriveField {
    pub fn new(frequency: f64, ex: Complex64, ey: Complex64) -> Result<Self> {
        finite("frequency", frequency)?;
        if !(ex.re.is_finite() && ex.im.is_finite() && ey.re.is_finite() && ey.im.is_finite()) {
            return Err(invalid("field", "amplitudes must be finite"));
        }
        Ok(Self { frequency, ex, ey })
    }

    /// Field of total amplitude `|E| = amplitude` in the given polarization state.
    pub fn polarized(frequency: f64, polarization: Polarization, amplitude: f64) -> Result<Self> {
        positive("amplitude", amplitude)?;
        let (ex, ey) = polarization.jones()?;
        Self::new(frequency, ex * amplitude, ey * amplitude)
    }

    /// Field carrying intensity `I = (c/2π)|E|²`.
    pub fn with_intensity(
        frequency: f64,
        polarization: Polarization,
        intensity: f64,
        light_speed: f64,
    ) -> Result<Self> {
        positive("intensity", intensity)?;
        positive("light_speed", light_speed)?;
        Self::polarized(
            frequency,
            polarization,
            (2.0 * PI * intensity / light_speed).sqrt(),
        )
    }

    /// `(E₊, E₋) = (Ex + iEy, Ex − iEy)`.
    pub fn circular_components(&self) -> (Complex64, Complex64) {
        let iey = Complex64::i() * self.ey;
        (self.ex + iey, self.ex - iey)
    }

    /// |E|² = |Ex|² + |Ey|².
    pub fn field_norm_sqr(&self) -> f64 {
        self.ex.norm_sqr() + self.ey.norm_sqr()
    }

    /// (|E₊/E|², |E₋/E|²); the pair always sums to 2.
    pub fn helicity_weights(&self) -> (f64, f64) {
        let (ep, em) = self.circular_components();
        let e2 = self.field_norm_sqr();
        (ep.norm_sqr() / e2, em.norm_sqr() / e2)
    }

    pub fn intensity(&self, light_speed: f64) -> f64 {
        light_speed / (2.0 * PI) * self.field_norm_sqr()
    }

    /// The same wave with its helicities exchanged (`Ey → −Ey`).
    pub fn mirrored(&self) -> Self {
        Self {
            ey: -self.ey,
            ..*self
        }
    }

    /// Same polarization and frequency, amplitude multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            ex: self.ex * factor,
            ey: self.ey * factor,
            ..*self
        }
    }

    pub fn with_frequency(&self, frequency: f64) -> Self {
        Self { frequency, ..*self }
    }

    /// Real lab-frame field at time `t`.
    pub fn at(&self, t: f64) -> [f64; 2] {
        let phase = Complex64::from_polar(1.0, -self.frequency * t);
        [2.0 * (self.ex * phase).re, 2.0 * (self.ey * phase).re]
    }
}

pub(crate) fn require_field(drive: &DriveField) -> Result<f64> {
    let e2 = drive.field_norm_sqr();
    if e2 > 0.0 {
        Ok(e2)
    } else {
        Err(invalid("field", "|E|² must be positive"))
    }
}
