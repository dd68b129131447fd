//! Time-domain view of the steady state: the displacement ρ(t) along the
//! rotating rod and the lab-frame dipole it radiates.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{require_field, DriveField};
use crate::model::OscillatorModel;
use crate::response::{denominators, shifted_frequencies};

fn driven_ratio(e: Complex64, d: Complex64, omega: f64, rotation: f64) -> Result<Complex64> {
    if e.norm_sqr() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if d.norm_sqr() == 0.0 {
        return Err(Error::SingularResonance { omega, rotation });
    }
    Ok(e / d)
}

/// `(E₊/d₊, E₋/d₋)`, with undriven channels set to zero.
fn channel_amplitudes(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<(Complex64, Complex64)> {
    let (ep, em) = drive.circular_components();
    let d = denominators(model, drive.frequency, rotation);
    Ok((
        driven_ratio(ep, d.plus, drive.frequency, rotation)?,
        driven_ratio(em, d.minus, drive.frequency, rotation)?,
    ))
}

/// Inhomogeneous solution `ρ(t) = (Q/2m)(E₊/d₊ e^{-iω₊t} + E₋/d₋ e^{-iω₋t} + c.c.)`.
///
/// The model only fixes Q²/m, so the charge-to-mass ratio Q/m has to be
/// supplied separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    amp_plus: Complex64,
    amp_minus: Complex64,
    freq_plus: f64,
    freq_minus: f64,
}

impl SteadyState {
    pub fn new(
        model: &OscillatorModel,
        drive: &DriveField,
        rotation: f64,
        charge_to_mass: f64,
    ) -> Result<Self> {
        let (ap, am) = channel_amplitudes(model, drive, rotation)?;
        let f = shifted_frequencies(drive.frequency, rotation);
        let half = 0.5 * charge_to_mass;
        Ok(Self {
            amp_plus: ap * half,
            amp_minus: am * half,
            freq_plus: f.plus,
            freq_minus: f.minus,
        })
    }

    /// ρ(t), cm.
    pub fn displacement(&self, t: f64) -> f64 {
        self.derivative(0, t)
    }

    /// n-th time derivative of ρ at `t`.
    pub fn derivative(&self, order: u32, t: f64) -> f64 {
        let term = |amp: Complex64, w: f64| {
            let factor = (-Complex64::i() * w).powu(order);
            2.0 * (amp * factor * Complex64::from_polar(1.0, -w * t)).re
        };
        term(self.amp_plus, self.freq_plus) + term(self.amp_minus, self.freq_minus)
    }
}

pub fn steady_state_displacement(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
    charge_to_mass: f64,
    t: f64,
) -> Result<f64> {
    Ok(SteadyState::new(model, drive, rotation, charge_to_mass)?.displacement(t))
}

/// One spectral line `p e^{-iνt} + c.c.` of the lab-frame dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleLine {
    pub frequency: f64,
    pub x: Complex64,
    pub y: Complex64,
}

impl DipoleLine {
    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr()
    }

    /// Far-field radiated power `4ν⁴|p|²/3c³` (Larmor, time-averaged).
    pub fn radiated_power(&self, light_speed: f64) -> f64 {
        4.0 * self.frequency.powi(4) * self.norm_sqr() / (3.0 * light_speed.powi(3))
    }
}

/// The three lines at ω, ω + 2Ω and ω − 2Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleSpectrum {
    pub elastic: DipoleLine,
    pub up_shifted: DipoleLine,
    pub down_shifted: DipoleLine,
}

impl DipoleSpectrum {
    pub fn lines(&self) -> [DipoleLine; 3] {
        [self.elastic, self.up_shifted, self.down_shifted]
    }

    /// Sum of the complex amplitudes of all three lines. Meaningful as a single
    /// line only when they are degenerate (Ω = 0).
    pub fn coherent_sum(&self) -> (Complex64, Complex64) {
        self.lines()
            .iter()
            .fold((Complex64::default(), Complex64::default()), |(x, y), l| {
                (x + l.x, y + l.y)
            })
    }

    /// Real dipole vector at time `t`.
    pub fn at(&self, t: f64) -> [f64; 2] {
        self.lines().iter().fold([0.0, 0.0], |acc, l| {
            let ph = Complex64::from_polar(1.0, -l.frequency * t);
            [acc[0] + 2.0 * (l.x * ph).re, acc[1] + 2.0 * (l.y * ph).re]
        })
    }

    /// Extinction from the work done by the field on the ω line,
    /// `σ_ext = 4πω Im{p_ω·E*}/(c|E|²)`.
    pub fn extinction(&self, drive: &DriveField, light_speed: f64) -> Result<f64> {
        let e2 = require_field(drive)?;
        let p = &self.elastic;
        let work = p.x * drive.ex.conj() + p.y * drive.ey.conj();
        Ok(4.0 * PI * drive.frequency * work.im / (light_speed * e2))
    }
}

/// Decompose `p = Qρ ρ̂` into its three lab-frame spectral lines.
pub fn induced_dipole_spectrum(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<DipoleSpectrum> {
    let (ap, am) = channel_amplitudes(model, drive, rotation)?;
    let q = 0.25 * model.coupling;
    let i = Complex64::i();
    let f = shifted_frequencies(drive.frequency, rotation);
    Ok(DipoleSpectrum {
        elastic: DipoleLine {
            frequency: drive.frequency,
            x: (ap + am) * q,
            y: -i * (ap - am) * q,
        },
        up_shifted: DipoleLine {
            frequency: f.plus_plus,
            x: ap * q,
            y: i * ap * q,
        },
        down_shifted: DipoleLine {
            frequency: f.minus_minus,
            x: am * q,
            y: -i * am * q,
        },
    })
}
