//! Closed-form steady-state response of the rotating oscillator.
//!
//! With `ω± = ω ± Ω` the rod sees two shifted drives, each filtered by
//! `d± = ω₀² − Ω² − ω±(ω± + iγ) − iτω±(ω±² + 3Ω²)`. Every observable below is
//! a weighted sum over the two helicity channels with weights `|E±/E|²/|d±|²`.
//!
//! Scattering prefactors `Q⁴/3m²c⁴` are always written as `(Q²/mc)(τ/2)` so the
//! power balance closes identically even when τ is chosen independently of
//! the coupling.
//!
//! The averages treat the two channels as incoherent, which holds whenever
//! ω₊ ≠ ±ω₋. At Ω = 0 or ω = 0 with both helicities driven the channels share
//! a frequency and their interference is not included.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{require_field, DriveField};
use crate::model::OscillatorModel;

/// Drive frequency shifted by one and two rotation quanta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedFrequencies {
    /// ω + Ω
    pub plus: f64,
    /// ω − Ω
    pub minus: f64,
    /// ω + 2Ω
    pub plus_plus: f64,
    /// ω − 2Ω
    pub minus_minus: f64,
}

pub fn shifted_frequencies(omega: f64, rotation: f64) -> ShiftedFrequencies {
    ShiftedFrequencies {
        plus: omega + rotation,
        minus: omega - rotation,
        plus_plus: omega + 2.0 * rotation,
        minus_minus: omega - 2.0 * rotation,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseDenominators {
    pub plus: Complex64,
    pub minus: Complex64,
}

/// Denominator of one helicity channel driven at the co-rotating frequency `shifted`.
pub fn channel_denominator(model: &OscillatorModel, shifted: f64, rotation: f64) -> Complex64 {
    let w0 = model.natural_frequency;
    let rot2 = rotation * rotation;
    let re = w0 * w0 - rot2 - shifted * shifted;
    let im = -model.damping_rate * shifted
        - model.radiative_time * shifted * (shifted * shifted + 3.0 * rot2);
    Complex64::new(re, im)
}

pub fn denominators(model: &OscillatorModel, omega: f64, rotation: f64) -> ResponseDenominators {
    let f = shifted_frequencies(omega, rotation);
    ResponseDenominators {
        plus: channel_denominator(model, f.plus, rotation),
        minus: channel_denominator(model, f.minus, rotation),
    }
}

/// The six power channels at one (ω, Ω) point, as areas.
///
/// `extinction` is the optical-theorem value; the other five are the
/// individual sinks it should split into.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CrossSectionSet {
    pub mechanical: f64,
    pub absorption: f64,
    pub elastic: f64,
    /// Emission at ω + 2Ω.
    pub inelastic_plus: f64,
    /// Emission at ω − 2Ω.
    pub inelastic_minus: f64,
    pub extinction: f64,
}

impl CrossSectionSet {
    pub fn partial_sum(&self) -> f64 {
        self.elastic
            + self.inelastic_plus
            + self.inelastic_minus
            + self.mechanical
            + self.absorption
    }

    /// Σ|partials|, the scale against which the balance residual is judged.
    pub fn partial_scale(&self) -> f64 {
        self.elastic.abs()
            + self.inelastic_plus.abs()
            + self.inelastic_minus.abs()
            + self.mechanical.abs()
            + self.absorption.abs()
    }

    /// σ_ext − Σ partials.
    pub fn balance_residual(&self) -> f64 {
        self.extinction - self.partial_sum()
    }

    /// `|residual| ≤ rel_tol · Σ|partials|`.
    pub fn is_balanced(&self, rel_tol: f64) -> bool {
        self.balance_residual().abs() <= rel_tol * self.partial_scale()
    }

    pub fn scattering(&self) -> f64 {
        self.elastic + self.inelastic_plus + self.inelastic_minus
    }

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.mechanical,
            self.absorption,
            self.elastic,
            self.inelastic_plus,
            self.inelastic_minus,
            self.extinction,
        ]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self {
            mechanical: v[0],
            absorption: v[1],
            elastic: v[2],
            inelastic_plus: v[3],
            inelastic_minus: v[4],
            extinction: v[5],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }
}

/// Everything the observables share: frequencies and `|E±/E|²/|d±|²`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Channels {
    pub freq: ShiftedFrequencies,
    pub omega: f64,
    pub rotation: f64,
    pub plus: f64,
    pub minus: f64,
    pub field_norm_sqr: f64,
}

impl Channels {
    pub fn new(model: &OscillatorModel, drive: &DriveField, rotation: f64) -> Result<Self> {
        let field_norm_sqr = require_field(drive)?;
        let omega = drive.frequency;
        let (wp, wm) = drive.helicity_weights();
        let d = denominators(model, omega, rotation);
        let freq = shifted_frequencies(omega, rotation);
        let ratio = |w: f64, d: Complex64, shifted: f64| -> Result<f64> {
            if w == 0.0 {
                return Ok(0.0);
            }
            let n = d.norm_sqr();
            // At ω± = 0 with Ω² = ω₀² and τ = 0 every numerator of the channel
            // carries a factor ω±, so the channel contributes its ω = ±Ω line
            // limit, zero.
            if n == 0.0 && shifted == 0.0 && model.radiative_time == 0.0 {
                return Ok(0.0);
            }
            if n == 0.0 || !n.is_finite() {
                return Err(Error::SingularResonance { omega, rotation });
            }
            Ok(w / n)
        };
        Ok(Self {
            omega,
            rotation,
            plus: ratio(wp, d.plus, freq.plus)?,
            minus: ratio(wm, d.minus, freq.minus)?,
            freq,
            field_norm_sqr,
        })
    }

    /// Bracketed factors of the torque, `(γω₊ + τω₊₊³, γω₋ + τω₋₋³)`.
    fn torque_factors(&self, model: &OscillatorModel) -> (f64, f64) {
        let g = model.damping_rate;
        let tau = model.radiative_time;
        let f = &self.freq;
        (
            g * f.plus + tau * f.plus_plus.powi(3),
            g * f.minus + tau * f.minus_minus.powi(3),
        )
    }

    pub fn torque(&self, model: &OscillatorModel) -> f64 {
        let (fp, fm) = self.torque_factors(model);
        0.5 * model.coupling * self.field_norm_sqr * (-fp * self.plus + fm * self.minus)
    }

    pub fn cross_sections(&self, model: &OscillatorModel) -> CrossSectionSet {
        let pref = PI * model.area_prefactor();
        let g = model.damping_rate;
        let half_tau = 0.5 * model.radiative_time;
        let f = &self.freq;
        let rot2 = self.rotation * self.rotation;
        let (fp, fm) = self.torque_factors(model);

        let mechanical = pref * self.rotation * (-fp * self.plus + fm * self.minus);
        let absorption = pref * g * (f.plus * f.plus * self.plus + f.minus * f.minus * self.minus);
        let elastic = pref * half_tau * self.omega.powi(4) * (self.plus + self.minus);
        let inelastic_plus = pref * half_tau * f.plus_plus.powi(4) * self.plus;
        let inelastic_minus = pref * half_tau * f.minus_minus.powi(4) * self.minus;
        let tau = model.radiative_time;
        let extinction = pref
            * self.omega
            * (f.plus * (g + tau * (f.plus * f.plus + 3.0 * rot2)) * self.plus
                + f.minus * (g + tau * (f.minus * f.minus + 3.0 * rot2)) * self.minus);

        CrossSectionSet {
            mechanical,
            absorption,
            elastic,
            inelastic_plus,
            inelastic_minus,
            extinction,
        }
    }
}

/// Time-averaged torque about ẑ (erg).
pub fn torque(model: &OscillatorModel, drive: &DriveField, rotation: f64) -> Result<f64> {
    Ok(Channels::new(model, drive, rotation)?.torque(model))
}

/// All six cross sections at once.
pub fn cross_sections(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<CrossSectionSet> {
    Ok(Channels::new(model, drive, rotation)?.cross_sections(model))
}

pub fn absorption_cross_section(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<f64> {
    Ok(cross_sections(model, drive, rotation)?.absorption)
}

pub fn elastic_cross_section(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<f64> {
    Ok(cross_sections(model, drive, rotation)?.elastic)
}

/// `(σ_{ω+2Ω}, σ_{ω−2Ω})`.
pub fn inelastic_cross_sections(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<(f64, f64)> {
    let s = cross_sections(model, drive, rotation)?;
    Ok((s.inelastic_plus, s.inelastic_minus))
}

/// σ_mech = MΩ/I. Negative when the light brakes the particle.
pub fn mechanical_cross_section(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<f64> {
    Ok(cross_sections(model, drive, rotation)?.mechanical)
}

pub fn extinction_cross_section(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<f64> {
    Ok(cross_sections(model, drive, rotation)?.extinction)
}

/// σ_ext minus the sum of the five partial channels.
pub fn energy_balance_residual(
    model: &OscillatorModel,
    drive: &DriveField,
    rotation: f64,
) -> Result<f64> {
    Ok(cross_sections(model, drive, rotation)?.balance_residual())
}

/// Polarizability `α = (Q²/m)/d` of the particle at rest.
pub fn static_polarizability(model: &OscillatorModel, omega: f64) -> Result<Complex64> {
    let d = channel_denominator(model, omega, 0.0);
    if d.norm_sqr() == 0.0 {
        return Err(Error::SingularResonance {
            omega,
            rotation: 0.0,
        });
    }
    Ok(model.coupling / d)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::field::Polarization;
    use approx::assert_relative_eq;

    fn lcp(omega: f64) -> DriveField {
        DriveField::polarized(omega, Polarization::Lcp, 1.0).unwrap()
    }

    #[test]
    fn shifted_frequency_examples() {
        let f = shifted_frequencies(1.0, 0.0);
        assert_eq!(
            (f.plus, f.minus, f.plus_plus, f.minus_minus),
            (1.0, 1.0, 1.0, 1.0)
        );
        let f = shifted_frequencies(0.5, 2.0);
        assert_eq!(
            (f.plus, f.minus, f.plus_plus, f.minus_minus),
            (2.5, -1.5, 4.5, -3.5)
        );
        let f = shifted_frequencies(1.0, -1.0);
        assert_eq!(
            (f.plus, f.minus, f.plus_plus, f.minus_minus),
            (0.0, 2.0, -1.0, 3.0)
        );
    }

    #[test]
    fn denominator_examples() {
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let d = denominators(&m, 0.0, 0.0);
        assert_eq!(d.plus, Complex64::new(1.0, 0.0));
        assert_eq!(d.minus, Complex64::new(1.0, 0.0));

        let d = denominators(&m, 0.5, 0.2);
        assert_relative_eq!(d.minus.re, 0.87, epsilon = 1e-15);
        assert_relative_eq!(d.minus.im, -0.03, epsilon = 1e-15);

        // lossless, on the lower ellipse: Ω = 3, ω − Ω = 4, ω₀ = 5
        let lossless = OscillatorModel::new(1.0, 5.0, 0.0, 0.0, 1.0).unwrap();
        let d = denominators(&lossless, 7.0, 3.0);
        assert_eq!(d.minus, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn denominator_rotation_symmetry() {
        let m = OscillatorModel::normalized(0.07, 0.02).unwrap();
        let a = denominators(&m, 0.8, 0.3);
        let b = denominators(&m, 0.8, -0.3);
        assert_eq!(a.plus, b.minus);
        assert_eq!(a.minus, b.plus);
    }

    #[test]
    fn torque_reference_point() {
        // Frozen from an independent exact evaluation and a DOP853 time-domain run.
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let t = torque(&m, &lcp(0.5), 0.2).unwrap();
        assert_relative_eq!(t, 0.039_588_281_868_566_904, max_relative = 1e-14);
        assert!(torque(&m, &lcp(0.2), 0.5).unwrap() < 0.0);
    }

    #[test]
    fn torque_vanishes_on_frozen_field_line_without_tau() {
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        // (ω₀, ω₀) itself is excluded: there d₋ = 0 for any damping.
        for w in [0.1, 0.5, 0.9, 1.7] {
            assert_eq!(torque(&m, &lcp(w), w).unwrap(), 0.0);
        }
    }

    #[test]
    fn torque_on_frozen_field_line_with_tau_is_radiative() {
        // Open question in the model: with τ > 0 the ω = Ω line keeps a τ(ω−2Ω)³ term.
        let m = OscillatorModel::normalized(0.1, 1e-3).unwrap();
        let w: f64 = 0.6;
        let d = denominators(&m, w, w).minus;
        let expected = 0.5 * 1e-3 * (w - 2.0 * w).powi(3) * 2.0 / d.norm_sqr();
        assert_relative_eq!(
            torque(&m, &lcp(w), w).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn linear_drive_at_rest_has_no_torque() {
        let m = OscillatorModel::normalized(0.1, 1e-3).unwrap();
        let lin = DriveField::polarized(0.9, Polarization::Linear, 1.0).unwrap();
        assert_eq!(torque(&m, &lin, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn absorption_reference_point() {
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let s = absorption_cross_section(&m, &lcp(0.5), 0.2).unwrap();
        assert_relative_eq!(s, 0.074_622_153_291_919_079, max_relative = 1e-14);
        let lossless = OscillatorModel::normalized(0.0, 1e-3).unwrap();
        assert_eq!(
            absorption_cross_section(&lossless, &lcp(0.5), 0.2).unwrap(),
            0.0
        );
    }

    #[test]
    fn absorption_peak_at_rest() {
        let g = 0.05;
        let m = OscillatorModel::normalized(g, 0.0).unwrap();
        let s = absorption_cross_section(&m, &lcp(1.0), 0.0).unwrap();
        assert_relative_eq!(s, PI / g * 2.0, max_relative = 1e-14);
        let small_tau = OscillatorModel::normalized(g, 1e-6).unwrap();
        let s = absorption_cross_section(&small_tau, &lcp(1.0), 0.0).unwrap();
        assert_relative_eq!(s, PI / g * 2.0, max_relative = 1e-4);
    }

    #[test]
    fn scattering_reference_point() {
        let m = OscillatorModel::normalized(0.1, 1e-4).unwrap();
        let s = cross_sections(&m, &lcp(0.5), 0.2).unwrap();
        assert_relative_eq!(s.elastic, 2.591_045_696_721_442_0e-5, max_relative = 1e-13);
        assert_relative_eq!(
            s.inelastic_minus,
            4.145_673_114_754_307_3e-8,
            max_relative = 1e-13
        );
        assert_relative_eq!(s.extinction, 0.124_396_311_183_252_17, max_relative = 1e-13);
        assert_eq!(s.inelastic_plus, 0.0);
    }

    #[test]
    fn inelastic_dominates_fast_rotation() {
        let m = OscillatorModel::normalized(0.1, 1e-4).unwrap();
        let s = cross_sections(&m, &lcp(0.75), 2.0).unwrap();
        assert_relative_eq!(s.elastic, 4.771_494_332_690_927_9e-6, max_relative = 1e-13);
        assert_relative_eq!(
            s.inelastic_minus,
            1.682_452_464_641_797_4e-3,
            max_relative = 1e-13
        );
        assert!(s.inelastic_minus > s.elastic);
    }

    #[test]
    fn zero_frequency_and_zero_rotation_limits() {
        let m = OscillatorModel::normalized(0.1, 1e-3).unwrap();
        let s = cross_sections(&m, &lcp(0.0), 0.7).unwrap();
        assert_eq!(s.elastic, 0.0);
        let lin = DriveField::polarized(0.8, Polarization::Linear, 1.0).unwrap();
        let s = cross_sections(&m, &lin, 0.0).unwrap();
        assert_eq!(s.mechanical, 0.0);
        assert_relative_eq!(
            s.inelastic_plus + s.inelastic_minus,
            s.elastic,
            max_relative = 1e-15
        );
    }

    #[test]
    fn mechanical_is_torque_times_rotation_over_intensity() {
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let drive = lcp(0.5);
        let s = cross_sections(&m, &drive, 0.2).unwrap();
        let t = torque(&m, &drive, 0.2).unwrap();
        assert_relative_eq!(
            s.mechanical,
            t * 0.2 / drive.intensity(1.0),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            s.mechanical,
            0.049_748_102_194_612_720,
            max_relative = 1e-14
        );
        assert!(mechanical_cross_section(&m, &lcp(0.3), 0.8).unwrap() < 0.0);
    }

    #[test]
    fn lossless_resonance_is_reported() {
        let m = OscillatorModel::new(1.0, 5.0, 0.0, 0.0, 1.0).unwrap();
        let err = cross_sections(&m, &lcp(7.0), 3.0).unwrap_err();
        assert!(matches!(err, Error::SingularResonance { .. }));
        assert!(torque(&m, &lcp(7.0), 3.0).is_err());
        // The undriven channel may sit on its own resonance without harm.
        let rcp = DriveField::polarized(7.0, Polarization::Rcp, 1.0).unwrap();
        assert!(cross_sections(&m, &rcp, 3.0).is_ok());
        assert!(static_polarizability(&m, 5.0).is_err());
    }

    #[test]
    fn static_rotating_frame_drive_at_resonance() {
        // ω = Ω = ω₀: d₋ = 0 even with damping.
        let m = OscillatorModel::normalized(0.1, 0.0).unwrap();
        let s = cross_sections(&m, &lcp(1.0), 1.0).unwrap();
        assert_eq!(s.as_array(), [0.0; 6]);
        assert_eq!(torque(&m, &lcp(1.0), 1.0).unwrap(), 0.0);
        let radiating = OscillatorModel::normalized(0.1, 1e-4).unwrap();
        assert!(cross_sections(&radiating, &lcp(1.0), 1.0).is_err());
    }

    #[test]
    fn negative_extinction_window() {
        let m = OscillatorModel::normalized(0.1, 1e-4).unwrap();
        for i in 1..200 {
            let w = 2.0 * i as f64 / 200.0;
            assert!(
                extinction_cross_section(&m, &lcp(w), 2.0).unwrap() < 0.0,
                "omega {w}"
            );
        }
        assert!(extinction_cross_section(&m, &lcp(2.2), 2.0).unwrap() > 0.0);
    }

    #[test]
    fn static_polarizability_limits() {
        let m = OscillatorModel::physical(2.0, 1.5, 0.0, 1.0).unwrap();
        let a = static_polarizability(&m, 0.0).unwrap();
        assert_eq!(a, Complex64::new(2.0 / 2.25, 0.0));
        let w: f64 = 0.8;
        let inv = -1.0 / static_polarizability(&m, w).unwrap();
        assert_relative_eq!(inv.im, 2.0 * w.powi(3) / 3.0, max_relative = 1e-14);
        let lossy = m.with_damping(0.3).unwrap();
        let inv = -1.0 / static_polarizability(&lossy, w).unwrap();
        assert_relative_eq!(
            inv.im,
            2.0 * w.powi(3) / 3.0 + 0.3 * w / 2.0,
            max_relative = 1e-14
        );
    }
}
