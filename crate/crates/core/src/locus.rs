//! Lossless resonance ellipses `Ω² + (ω ± Ω)² = ω₀²`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::model::positive;

/// Which helicity channel resonates. LCP drives the lower branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `Ω² + (ω + Ω)² = ω₀²`, the E₊ channel.
    Upper,
    /// `Ω² + (ω − Ω)² = ω₀²`, the E₋ channel.
    Lower,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

/// `n_points` samples `(ω, Ω)` evenly spaced in the ellipse's parametric angle.
pub fn resonance_locus(
    natural_frequency: f64,
    branch: Branch,
    n_points: usize,
) -> Result<Vec<(f64, f64)>> {
    positive("natural_frequency", natural_frequency)?;
    if n_points < 2 {
        return Err(invalid("n_points", "need at least two points"));
    }
    let s = branch.sign();
    Ok((0..n_points)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n_points as f64;
            let rotation = natural_frequency * theta.sin();
            let omega = natural_frequency * theta.cos() - s * rotation;
            (omega, rotation)
        })
        .collect())
}

/// `(Ω² + (ω ± Ω)²)/ω₀² − 1`; zero on the locus.
pub fn locus_residual(natural_frequency: f64, branch: Branch, omega: f64, rotation: f64) -> f64 {
    let shifted = omega + branch.sign() * rotation;
    (rotation * rotation + shifted * shifted) / (natural_frequency * natural_frequency) - 1.0
}
