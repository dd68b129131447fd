//! (ω, Ω) maps and fixed-Ω spectra of the six cross sections.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{DriveField, Polarization};
use crate::model::OscillatorModel;
use crate::response::{cross_sections, CrossSectionSet};

/// Evenly spaced samples `min..=max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        let axis = Self { min, max, count };
        axis.validate()?;
        Ok(axis)
    }

    /// A single sample at `value`.
    pub fn point(value: f64) -> Self {
        Self {
            min: value,
            max: value,
            count: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidGrid("axis bounds must be finite".into()));
        }
        match self.count {
            0 => Err(Error::InvalidGrid("axis needs at least one sample".into())),
            1 if self.min != self.max => Err(Error::InvalidGrid(
                "a one-sample axis must have min == max".into(),
            )),
            1 => Ok(()),
            _ if self.max <= self.min => Err(Error::InvalidGrid("axis max must exceed min".into())),
            _ => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| self.min + (self.max - self.min) * (i as f64 / n))
            .collect()
    }
}

/// How cross sections are reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// In the model's own units (cm² for physical models).
    #[default]
    Raw,
    /// Mechanical, absorption and extinction in Q²γ/mcω₀²; elastic and
    /// inelastic in Q²τ/mc.
    FigureUnits,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::Raw => "raw",
            Normalization::FigureUnits => "figure",
        }
    }
}

/// Divisors applied to raw values before reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnScales {
    /// Applied to mechanical, absorption and extinction.
    pub dissipative: f64,
    /// Applied to elastic and both inelastic columns.
    pub radiative: f64,
}

impl ColumnScales {
    pub const UNIT: Self = Self {
        dissipative: 1.0,
        radiative: 1.0,
    };

    pub fn for_model(model: &OscillatorModel, normalization: Normalization) -> Result<Self> {
        match normalization {
            Normalization::Raw => Ok(Self::UNIT),
            Normalization::FigureUnits => {
                let s = Self {
                    dissipative: model.dissipative_unit(),
                    radiative: model.radiative_unit(),
                };
                if s.dissipative > 0.0 && s.radiative > 0.0 {
                    Ok(s)
                } else {
                    Err(Error::InvalidGrid(
                        "figure units need both γ > 0 and τ > 0".into(),
                    ))
                }
            }
        }
    }

    pub fn apply(&self, s: &CrossSectionSet) -> CrossSectionSet {
        CrossSectionSet {
            mechanical: s.mechanical / self.dissipative,
            absorption: s.absorption / self.dissipative,
            extinction: s.extinction / self.dissipative,
            elastic: s.elastic / self.radiative,
            inelastic_plus: s.inelastic_plus / self.radiative,
            inelastic_minus: s.inelastic_minus / self.radiative,
        }
    }

    pub fn undo(&self, s: &CrossSectionSet) -> CrossSectionSet {
        CrossSectionSet {
            mechanical: s.mechanical * self.dissipative,
            absorption: s.absorption * self.dissipative,
            extinction: s.extinction * self.dissipative,
            elastic: s.elastic * self.radiative,
            inelastic_plus: s.inelastic_plus * self.radiative,
            inelastic_minus: s.inelastic_minus * self.radiative,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRequest {
    pub model: OscillatorModel,
    pub polarization: Polarization,
    pub omega: Axis,
    pub rotation: Axis,
    pub normalization: Normalization,
}

/// One lattice cell. Cells on an exact lossless resonance are `singular`
/// and carry NaN in every column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanCell {
    pub sections: CrossSectionSet,
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub omegas: Vec<f64>,
    pub rotations: Vec<f64>,
    /// Row-major: rotation outer, ω inner.
    pub cells: Vec<ScanCell>,
    pub model: OscillatorModel,
    pub polarization: Polarization,
    pub normalization: Normalization,
    pub scales: ColumnScales,
}

impl ScanGrid {
    pub fn cell(&self, rotation_index: usize, omega_index: usize) -> &ScanCell {
        &self.cells[rotation_index * self.omegas.len() + omega_index]
    }

    /// `(ω, Ω, cell)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, &ScanCell)> + '_ {
        let n = self.omegas.len();
        self.cells
            .iter()
            .enumerate()
            .map(move |(k, c)| (self.omegas[k % n], self.rotations[k / n], c))
    }

    /// Cross sections back in raw model units.
    pub fn raw(&self, rotation_index: usize, omega_index: usize) -> CrossSectionSet {
        self.scales
            .undo(&self.cell(rotation_index, omega_index).sections)
    }

    pub fn singular_count(&self) -> usize {
        self.cells.iter().filter(|c| c.singular).count()
    }
}

fn evaluate_cell(
    model: &OscillatorModel,
    polarization: Polarization,
    scales: &ColumnScales,
    omega: f64,
    rotation: f64,
) -> Result<ScanCell> {
    let drive = DriveField::polarized(omega, polarization, 1.0)?;
    match cross_sections(model, &drive, rotation) {
        Ok(s) => Ok(ScanCell {
            sections: scales.apply(&s),
            singular: false,
        }),
        Err(Error::SingularResonance { .. }) => Ok(ScanCell {
            sections: CrossSectionSet::from_array([f64::NAN; 6]),
            singular: true,
        }),
        Err(e) => Err(e),
    }
}

/// Evaluate every lattice point independently. Cells are computed in
/// parallel on the current rayon pool; the result does not depend on the
/// number of threads.
pub fn grid_scan(req: &ScanRequest) -> Result<ScanGrid> {
    req.omega.validate()?;
    req.rotation.validate()?;
    req.polarization.jones()?;
    let scales = ColumnScales::for_model(&req.model, req.normalization)?;
    let omegas = req.omega.values();
    let rotations = req.rotation.values();
    let n = omegas.len();
    let cells = (0..n * rotations.len())
        .into_par_iter()
        .map(|k| {
            evaluate_cell(
                &req.model,
                req.polarization,
                &scales,
                omegas[k % n],
                rotations[k / n],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanGrid {
        omegas,
        rotations,
        cells,
        model: req.model,
        polarization: req.polarization,
        normalization: req.normalization,
        scales,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRequest {
    pub model: OscillatorModel,
    pub polarization: Polarization,
    pub rotation: f64,
    pub omega: Axis,
    pub normalization: Normalization,
}

impl SpectrumRequest {
    pub fn as_scan(&self) -> ScanRequest {
        ScanRequest {
            model: self.model,
            polarization: self.polarization,
            omega: self.omega,
            rotation: Axis::point(self.rotation),
            normalization: self.normalization,
        }
    }
}

/// Spectrum at fixed rotation: a one-row [`ScanGrid`].
pub fn spectrum_sweep(req: &SpectrumRequest) -> Result<ScanGrid> {
    grid_scan(&req.as_scan())
}

/// Parameter sets of the published maps and spectra, in normalized units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// LCP maps, γ = 0.1ω₀, τω₀² = 10⁻³γ, ω and Ω in [0, 2ω₀], 256².
    Fig2,
    /// Linear-polarization maps, Ω in [−2ω₀, 2ω₀] to show both sidebands.
    FigSI2,
    /// LCP spectrum at Ω = 2ω₀, dissipative rod (τω₀² = 10⁻³γ, γ = 0.1ω₀).
    Fig3a,
    /// LCP spectrum at Ω = 2ω₀, radiative rod (τω₀ = 0.1, γ = 10⁻³τω₀²).
    Fig3b,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PresetRequest {
    Grid(ScanRequest),
    Spectrum(SpectrumRequest),
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Fig2, Preset::FigSI2, Preset::Fig3a, Preset::Fig3b];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::FigSI2 => "figSI2",
            Preset::Fig3a => "fig3a",
            Preset::Fig3b => "fig3b",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(name))
    }

    pub fn request(self) -> PresetRequest {
        let dissipative = OscillatorModel::normalized(0.1, 1e-4).expect("valid preset");
        let radiative = OscillatorModel::normalized(1e-4, 0.1).expect("valid preset");
        let map_axis = Axis {
            min: 0.0,
            max: 2.0,
            count: 256,
        };
        let spectrum_axis = Axis {
            min: 0.0,
            max: 3.0,
            count: 601,
        };
        match self {
            Preset::Fig2 => PresetRequest::Grid(ScanRequest {
                model: dissipative,
                polarization: Polarization::Lcp,
                omega: map_axis,
                rotation: map_axis,
                normalization: Normalization::FigureUnits,
            }),
            Preset::FigSI2 => PresetRequest::Grid(ScanRequest {
                model: dissipative,
                polarization: Polarization::Linear,
                omega: map_axis,
                rotation: Axis {
                    min: -2.0,
                    max: 2.0,
                    count: 257,
                },
                normalization: Normalization::FigureUnits,
            }),
            Preset::Fig3a => PresetRequest::Spectrum(SpectrumRequest {
                model: dissipative,
                polarization: Polarization::Lcp,
                rotation: 2.0,
                omega: spectrum_axis,
                normalization: Normalization::Raw,
            }),
            Preset::Fig3b => PresetRequest::Spectrum(SpectrumRequest {
                model: radiative,
                polarization: Polarization::Lcp,
                rotation: 2.0,
                omega: spectrum_axis,
                normalization: Normalization::Raw,
            }),
        }
    }
}
