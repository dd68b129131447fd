//! Beam propagation through a dilute cloud of rotating particles.
//!
//! Single-pass, single-scattering closure: each particle removes (or adds)
//! `σ_ext I` from the beam, so `dI/dz = −n σ̄_ext I`. Rotation is held fixed
//! by whatever drives the particles; the braking torque is not fed back.

use crate::error::{invalid, Error, Result};
use crate::field::DriveField;
use crate::model::{finite, non_negative, OscillatorModel};
use crate::response::{cross_sections, CrossSectionSet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleMember {
    pub model: OscillatorModel,
    /// Ω, rad/s.
    pub rotation: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediumSpec {
    /// n, cm⁻³.
    pub number_density: f64,
    /// z, cm.
    pub path_length: f64,
    pub members: Vec<EnsembleMember>,
}

const WEIGHT_SUM_TOL: f64 = 1e-9;

impl MediumSpec {
    pub fn new(
        number_density: f64,
        path_length: f64,
        members: Vec<EnsembleMember>,
    ) -> Result<Self> {
        let spec = Self {
            number_density,
            path_length,
            members,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("number_density", self.number_density)?;
        non_negative("path_length", self.path_length)?;
        if self.members.is_empty() {
            return Err(invalid("members", "ensemble is empty"));
        }
        for m in &self.members {
            non_negative("weight", m.weight)?;
            finite("rotation", m.rotation)?;
        }
        let total: f64 = self.members.iter().map(|m| m.weight).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(invalid(
                "weight",
                format!("weights must sum to 1, got {total}"),
            ));
        }
        Ok(())
    }
}

/// Ensemble-averaged response. Members sitting on a lossless resonance are
/// dropped and the remaining weights renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleExtinction {
    pub mean_extinction: f64,
    /// Weighted mean of `−σ_mech`: beam power per unit intensity that the
    /// external drive must supply to hold the rotation.
    pub mean_sustaining: f64,
    pub members: Vec<Option<CrossSectionSet>>,
    /// Indices of excluded (singular) members.
    pub excluded: Vec<usize>,
}

impl EnsembleExtinction {
    pub fn has_exclusions(&self) -> bool {
        !self.excluded.is_empty()
    }
}

pub fn ensemble_extinction(medium: &MediumSpec, drive: &DriveField) -> Result<EnsembleExtinction> {
    medium.validate()?;
    let mut members = Vec::with_capacity(medium.members.len());
    let mut excluded = Vec::new();
    let (mut ext, mut sustain, mut weight) = (0.0, 0.0, 0.0);
    for (i, m) in medium.members.iter().enumerate() {
        match cross_sections(&m.model, drive, m.rotation) {
            Ok(s) => {
                ext += m.weight * s.extinction;
                sustain -= m.weight * s.mechanical;
                weight += m.weight;
                members.push(Some(s));
            }
            Err(Error::SingularResonance { .. }) => {
                excluded.push(i);
                members.push(None);
            }
            Err(e) => return Err(e),
        }
    }
    if weight == 0.0 {
        return Err(Error::EmptyEnsemble);
    }
    Ok(EnsembleExtinction {
        mean_extinction: ext / weight,
        mean_sustaining: sustain / weight,
        members,
        excluded,
    })
}

/// Gain coefficient `g = −n σ̄_ext` (cm⁻¹); positive means amplification.
pub fn gain_coefficient(medium: &MediumSpec, drive: &DriveField) -> Result<f64> {
    let e = ensemble_extinction(medium, drive)?;
    Ok(-medium.number_density * e.mean_extinction)
}

/// `I(z) = I₀ e^{gz}`.
pub fn propagate_intensity(initial_intensity: f64, gain: f64, distance: f64) -> Result<f64> {
    non_negative("initial_intensity", initial_intensity)?;
    finite("gain", gain)?;
    finite("distance", distance)?;
    Ok(initial_intensity * (gain * distance).exp())
}

/// `(z, I(z))` at `samples` evenly spaced points on `[0, path_length]`.
pub fn intensity_profile(
    initial_intensity: f64,
    gain: f64,
    path_length: f64,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    non_negative("path_length", path_length)?;
    if samples < 2 {
        return Err(invalid("samples", "need at least two samples"));
    }
    (0..samples)
        .map(|k| {
            let z = path_length * k as f64 / (samples - 1) as f64;
            Ok((z, propagate_intensity(initial_intensity, gain, z)?))
        })
        .collect()
}
