//! Configuration file schema and the flag-over-file merge.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

type Field<T> = Option<Spanned<T>>;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub output: Field<PathBuf>,
    #[serde(default)]
    pub model: ModelFile,
    #[serde(default)]
    pub drive: DriveFile,
    #[serde(default)]
    pub scan: ScanFile,
    #[serde(default)]
    pub body: BodyFile,
    #[serde(default)]
    pub spinup: SpinupFile,
    #[serde(default)]
    pub thermal: ThermalFile,
    #[serde(default)]
    pub medium: MediumFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub mode: Field<String>,
    pub source: Field<String>,
    pub gamma: Field<f64>,
    pub tau: Field<f64>,
    pub coupling: Field<f64>,
    pub omega0: Field<f64>,
    pub light_speed: Field<f64>,
    pub plasma_frequency: Field<f64>,
    pub radius: Field<f64>,
    pub volume: Field<f64>,
    pub depolarization: Field<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveFile {
    pub omega: Field<f64>,
    #[serde(rename = "Omega")]
    pub rotation: Field<f64>,
    pub pol: Field<String>,
    pub amplitude: Field<f64>,
    pub intensity: Field<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanFile {
    pub preset: Field<String>,
    pub omega_min: Field<f64>,
    pub omega_max: Field<f64>,
    pub omega_count: Field<usize>,
    #[serde(rename = "Omega_min")]
    pub rotation_min: Field<f64>,
    #[serde(rename = "Omega_max")]
    pub rotation_max: Field<f64>,
    #[serde(rename = "Omega_count")]
    pub rotation_count: Field<usize>,
    pub units: Field<String>,
    pub long: Field<PathBuf>,
    pub locus: Field<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyFile {
    pub shape: Field<String>,
    pub density: Field<f64>,
    pub radius: Field<f64>,
    pub length: Field<f64>,
    pub inertia: Field<f64>,
    pub melting_temperature: Field<f64>,
    pub surface_tension: Field<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinupFile {
    pub target: Field<f64>,
    pub initial: Field<f64>,
    pub max_time: Field<f64>,
    pub max_steps: Field<usize>,
    pub rel_tol: Field<f64>,
    pub sphere_torque: Field<bool>,
    pub check_burst: Field<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalFile {
    pub ambient: Field<f64>,
    pub coefficient: Field<f64>,
    pub intensity_min: Field<f64>,
    pub intensity_max: Field<f64>,
    pub count: Field<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumFile {
    pub number_density: Field<f64>,
    pub path_length: Field<f64>,
    pub samples: Field<usize>,
    pub initial_intensity: Field<f64>,
    #[serde(default)]
    pub members: Vec<MemberFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberFile {
    #[serde(rename = "Omega")]
    pub rotation: Spanned<f64>,
    pub weight: Spanned<f64>,
    pub gamma: Field<f64>,
    pub tau: Field<f64>,
}

/// A parsed configuration file together with its text, for line lookups.
#[derive(Debug, Default)]
pub struct Loaded {
    pub file: FileConfig,
    text: String,
    path: Option<PathBuf>,
}

impl Loaded {
    pub fn read(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let file = toml::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Ok(Self {
            file,
            text,
            path: Some(path.to_path_buf()),
        })
    }

    fn line_of(&self, offset: usize) -> usize {
        self.text[..offset.min(self.text.len())]
            .matches('\n')
            .count()
            + 1
    }

    /// Flag value if given, otherwise the file value, with where it came from.
    pub fn pick<T: Clone>(
        &self,
        flag: Option<T>,
        file: &Field<T>,
        key: &'static str,
    ) -> Option<Param<T>> {
        if let Some(value) = flag {
            return Some(Param {
                value,
                origin: Origin::Flag(key),
            });
        }
        file.as_ref().map(|s| self.spanned(s, key))
    }

    pub fn spanned<T: Clone>(&self, s: &Spanned<T>, key: &'static str) -> Param<T> {
        Param {
            value: s.get_ref().clone(),
            origin: Origin::File {
                path: self.path.clone().unwrap_or_default(),
                line: self.line_of(s.span().start),
                key,
            },
        }
    }
}

#[derive(Debug, Clone)]
pub enum Origin {
    Flag(&'static str),
    File {
        path: PathBuf,
        line: usize,
        key: &'static str,
    },
    Default(&'static str),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Flag(key) => write!(f, "--{}", key.replace('_', "-")),
            Origin::File { path, line, key } => write!(f, "{}:{line}: {key}", path.display()),
            Origin::Default(key) => write!(f, "default {key}"),
        }
    }
}

/// A resolved setting and its source, so diagnostics can point at it.
#[derive(Debug, Clone)]
pub struct Param<T> {
    pub value: T,
    pub origin: Origin,
}

impl<T> Param<T> {
    pub fn default(value: T, key: &'static str) -> Self {
        Self {
            value,
            origin: Origin::Default(key),
        }
    }

    pub fn fail(&self, reason: impl fmt::Display) -> CliError {
        CliError::Config(format!("{}: {reason}", self.origin))
    }
}

impl Param<f64> {
    pub fn finite(&self) -> Result<f64, CliError> {
        if self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(self.fail(format!("must be finite, got {}", self.value)))
        }
    }

    pub fn positive(&self) -> Result<f64, CliError> {
        if self.value > 0.0 && self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(self.fail(format!("must be positive, got {}", self.value)))
        }
    }

    pub fn non_negative(&self) -> Result<f64, CliError> {
        if self.value >= 0.0 && self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(self.fail(format!("must be non-negative, got {}", self.value)))
        }
    }
}

impl Param<usize> {
    pub fn at_least(&self, min: usize) -> Result<usize, CliError> {
        if self.value >= min {
            Ok(self.value)
        } else {
            Err(self.fail(format!("must be at least {min}, got {}", self.value)))
        }
    }
}

pub fn require<T>(p: Option<Param<T>>, key: &str, context: &str) -> Result<Param<T>, CliError> {
    p.ok_or_else(|| CliError::Config(format!("missing `{key}` ({context})")))
}
