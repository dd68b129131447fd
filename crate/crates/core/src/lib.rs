//! Light scattering, optical torque and stimulated emission by a spinning
//! polarizable rod, modeled as a charged oscillator constrained to a
//! rotating axis.
//!
//! The core of the crate is closed-form: [`response`] evaluates the torque
//! and the six cross sections (mechanical, absorption, elastic, two
//! inelastic sidebands at ω ± 2Ω, and extinction) for any drive and rotation
//! rate. [`dipole`] gives the same steady state in the time domain.
//! [`material`] maps Drude particles onto the oscillator, [`dynamics`]
//! integrates the optical spin-up and heating, [`scan`] produces (ω, Ω)
//! maps, and [`gain`] propagates a beam through a cloud of rotors.
//!
//! Units are Gaussian-CGS throughout.

pub mod dipole;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod field;
pub mod gain;
pub mod locus;
pub mod material;
pub mod model;
pub mod response;
pub mod scan;

pub use error::{Error, Result};
pub use field::{DriveField, Polarization};
pub use model::{OscillatorModel, UnitMode, SPEED_OF_LIGHT};
pub use response::{
    absorption_cross_section, cross_sections, denominators, elastic_cross_section,
    energy_balance_residual, extinction_cross_section, inelastic_cross_sections,
    mechanical_cross_section, shifted_frequencies, static_polarizability, torque, CrossSectionSet,
    ResponseDenominators, ShiftedFrequencies,
};

/// Relative tolerance for algebraic identities such as the power balance.
pub const IDENTITY_TOL: f64 = 1e-10;
