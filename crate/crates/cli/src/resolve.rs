//! Turn flags plus file values into library inputs.

use clap::ValueEnum;

use rotospin::dynamics::{RigidBodyParams, ThermalParams};
use rotospin::material::{DrudeEllipsoid, DrudeSphere};
use rotospin::{DriveField, OscillatorModel, Polarization, SPEED_OF_LIGHT};

use crate::config::{require, Loaded, Param};
use crate::error::CliError;
use crate::{BodyArgs, Cli, Pol, Shape, Source, Units};

/// Parse a file string with the same vocabulary as the matching flag.
pub fn enum_param<E: ValueEnum + Clone>(
    p: Option<Param<String>>,
) -> Result<Option<Param<E>>, CliError> {
    p.map(|p| {
        E::from_str(&p.value, true)
            .map(|value| Param {
                value,
                origin: p.origin.clone(),
            })
            .map_err(|_| p.fail(format!("unknown value `{}`", p.value)))
    })
    .transpose()
}

fn flag_or_enum<E: ValueEnum + Clone>(
    cfg: &Loaded,
    flag: Option<E>,
    file: &Option<toml::Spanned<String>>,
    key: &'static str,
) -> Result<Option<Param<E>>, CliError> {
    match flag {
        Some(v) => Ok(cfg.pick(Some(v), &None, key)),
        None => enum_param(cfg.pick(None, file, key)),
    }
}

/// Defaults used when the model is only partly specified, e.g. by a preset.
#[derive(Debug, Clone, Copy)]
pub struct ModelDefaults {
    pub gamma: f64,
    pub tau: f64,
}

impl Default for ModelDefaults {
    fn default() -> Self {
        Self {
            gamma: 0.1,
            tau: 0.0,
        }
    }
}

/// Whether any model key was given, on the command line or in the file.
pub fn model_overridden(cli: &Cli, cfg: &Loaded) -> bool {
    let a = &cli.model;
    let f = &cfg.file.model;
    a.normalized
        || a.physical
        || a.source.is_some()
        || a.gamma.is_some()
        || a.tau.is_some()
        || [&f.mode, &f.source].iter().any(|x| x.is_some())
        || [&f.gamma, &f.tau].iter().any(|x| x.is_some())
}

pub fn model(
    cli: &Cli,
    cfg: &Loaded,
    defaults: ModelDefaults,
) -> Result<OscillatorModel, CliError> {
    let a = &cli.model;
    let f = &cfg.file.model;
    let mode_flag = if a.physical {
        Some("physical".to_string())
    } else if a.normalized {
        Some("normalized".to_string())
    } else {
        None
    };
    let mode = cfg.pick(mode_flag, &f.mode, "mode");
    let source = flag_or_enum::<Source>(cfg, a.source, &f.source, "source")?;
    let source_value = source.as_ref().map_or(Source::Direct, |s| s.value);
    let physical = match &mode {
        Some(p) => match p.value.to_ascii_lowercase().as_str() {
            "physical" => true,
            "normalized" => false,
            other => {
                return Err(p.fail(format!(
                    "mode must be `normalized` or `physical`, got `{other}`"
                )))
            }
        },
        None => source_value != Source::Direct,
    };

    let gamma = cfg.pick(a.gamma, &f.gamma, "gamma");
    let tau = cfg.pick(a.tau, &f.tau, "tau");
    let coupling = cfg.pick(a.coupling, &f.coupling, "coupling");
    let omega0 = cfg.pick(a.omega0, &f.omega0, "omega0");
    let light_speed = cfg.pick(a.light_speed, &f.light_speed, "light_speed");
    let plasma = cfg.pick(a.plasma_frequency, &f.plasma_frequency, "plasma_frequency");
    let radius = cfg.pick(a.radius, &f.radius, "radius");
    let volume = cfg.pick(a.volume, &f.volume, "volume");
    let depol = cfg.pick(a.depolarization, &f.depolarization, "depolarization");

    let reject = |p: &Option<Param<f64>>, why: &str| -> Result<(), CliError> {
        match p {
            Some(p) => Err(p.fail(why)),
            None => Ok(()),
        }
    };

    if !physical {
        if let Some(s) = &source {
            if s.value != Source::Direct {
                return Err(s.fail("Drude sources need physical mode"));
            }
        }
        for p in [
            &coupling,
            &omega0,
            &light_speed,
            &plasma,
            &radius,
            &volume,
            &depol,
        ] {
            reject(p, "not used in normalized mode (ω₀ = c = Q²/m = 1)")?;
        }
        let gamma = gamma
            .unwrap_or(Param::default(defaults.gamma, "gamma"))
            .non_negative()?;
        let tau = tau
            .unwrap_or(Param::default(defaults.tau, "tau"))
            .non_negative()?;
        return Ok(OscillatorModel::normalized(gamma, tau)?);
    }

    reject(&tau, "τ is derived from the coupling in physical mode")?;
    let context = "physical mode";
    let gamma = require(gamma, "gamma", context)?.non_negative()?;
    let c = light_speed
        .unwrap_or(Param::default(SPEED_OF_LIGHT, "light_speed"))
        .positive()?;
    match source_value {
        Source::Direct => {
            for p in [&plasma, &radius, &volume, &depol] {
                reject(
                    p,
                    "only one model source may be given; this key belongs to a Drude source",
                )?;
            }
            let k = require(coupling, "coupling", "direct source")?.positive()?;
            let w0 = require(omega0, "omega0", "direct source")?.positive()?;
            Ok(OscillatorModel::physical(k, w0, gamma, c)?)
        }
        Source::DrudeSphere => {
            for p in [&coupling, &omega0, &volume, &depol] {
                reject(
                    p,
                    "only one model source may be given; not a drude-sphere key",
                )?;
            }
            let sphere = DrudeSphere {
                plasma_frequency: require(plasma, "plasma_frequency", "drude-sphere")?
                    .positive()?,
                damping_rate: gamma,
                radius: require(radius, "radius", "drude-sphere")?.positive()?,
            };
            Ok(sphere.to_model(c)?)
        }
        Source::DrudeEllipsoid => {
            for p in [&coupling, &omega0, &radius] {
                reject(
                    p,
                    "only one model source may be given; not a drude-ellipsoid key",
                )?;
            }
            let depol = require(depol, "depolarization", "drude-ellipsoid")?;
            if !(depol.value > 0.0 && depol.value < 1.0) {
                return Err(depol.fail(format!("must lie in (0, 1), got {}", depol.value)));
            }
            let ellipsoid = DrudeEllipsoid {
                plasma_frequency: require(plasma, "plasma_frequency", "drude-ellipsoid")?
                    .positive()?,
                damping_rate: gamma,
                volume: require(volume, "volume", "drude-ellipsoid")?.positive()?,
                depolarization: depol.value,
            };
            Ok(ellipsoid.to_model(c)?)
        }
    }
}

/// Sphere radius of the model source, if it is a Drude sphere.
pub fn model_radius(cli: &Cli, cfg: &Loaded) -> Option<f64> {
    cfg.pick(cli.model.radius, &cfg.file.model.radius, "radius")
        .map(|p| p.value)
}

pub fn polarization(
    cli: &Cli,
    cfg: &Loaded,
    default: Polarization,
) -> Result<Polarization, CliError> {
    let pol = flag_or_enum::<Pol>(cfg, cli.drive.pol, &cfg.file.drive.pol, "pol")?;
    Ok(match pol.map(|p| p.value) {
        None => default,
        Some(Pol::Lcp) => Polarization::Lcp,
        Some(Pol::Rcp) => Polarization::Rcp,
        Some(Pol::Linear) => Polarization::Linear,
    })
}

pub fn omega(cli: &Cli, cfg: &Loaded) -> Option<Param<f64>> {
    cfg.pick(cli.drive.omega, &cfg.file.drive.omega, "omega")
}

pub fn rotation(cli: &Cli, cfg: &Loaded) -> Option<Param<f64>> {
    cfg.pick(cli.drive.rotation, &cfg.file.drive.rotation, "Omega")
}

/// Drive at the configured frequency, polarization and strength.
pub fn drive(
    cli: &Cli,
    cfg: &Loaded,
    model: &OscillatorModel,
    context: &str,
) -> Result<DriveField, CliError> {
    let w = require(omega(cli, cfg), "omega", context)?.finite()?;
    let pol = polarization(cli, cfg, Polarization::Lcp)?;
    let amplitude = cfg.pick(cli.drive.amplitude, &cfg.file.drive.amplitude, "amplitude");
    let intensity = cfg.pick(cli.drive.intensity, &cfg.file.drive.intensity, "intensity");
    match (amplitude, intensity) {
        (Some(_), Some(i)) => Err(i.fail("give either amplitude or intensity, not both")),
        (None, Some(i)) => Ok(DriveField::with_intensity(
            w,
            pol,
            i.positive()?,
            model.light_speed,
        )?),
        (a, None) => {
            let a = a.unwrap_or(Param::default(1.0, "amplitude")).positive()?;
            Ok(DriveField::polarized(w, pol, a)?)
        }
    }
}

pub fn units(
    flag: Option<Units>,
    cfg: &Loaded,
    file: &Option<toml::Spanned<String>>,
) -> Result<Option<Units>, CliError> {
    Ok(flag_or_enum::<Units>(cfg, flag, file, "units")?.map(|p| p.value))
}

pub fn body(args: &BodyArgs, cli: &Cli, cfg: &Loaded) -> Result<RigidBodyParams, CliError> {
    let f = &cfg.file.body;
    let shape = flag_or_enum::<Shape>(cfg, args.shape, &f.shape, "shape")?
        .map_or(Shape::Sphere, |p| p.value);
    let density = cfg.pick(args.density, &f.density, "density");
    let radius = cfg
        .pick(args.body_radius, &f.radius, "body_radius")
        .or_else(|| {
            model_radius(cli, cfg).map(|r| Param::default(r, "body radius (model radius)"))
        });
    let mut body = match shape {
        Shape::Sphere => RigidBodyParams::solid_sphere(
            require(density, "density", "sphere body")?.positive()?,
            require(radius, "body_radius", "sphere body")?.positive()?,
        )?,
        Shape::Rod => RigidBodyParams::thin_rod(
            require(density, "density", "rod body")?.positive()?,
            require(
                cfg.pick(args.length, &f.length, "length"),
                "length",
                "rod body",
            )?
            .positive()?,
            require(radius, "body_radius", "rod body")?.positive()?,
        )?,
        Shape::Explicit => RigidBodyParams::new(
            require(
                cfg.pick(args.inertia, &f.inertia, "inertia"),
                "inertia",
                "explicit body",
            )?
            .positive()?,
            density
                .unwrap_or(Param::default(1.0, "density"))
                .positive()?,
            radius
                .unwrap_or(Param::default(1.0, "body_radius"))
                .positive()?,
        )?,
    };
    if let Some(t) = cfg.pick(
        args.melting_temperature,
        &f.melting_temperature,
        "melting_temperature",
    ) {
        body = body.with_melting_temperature(t.positive()?)?;
    }
    if let Some(s) = cfg.pick(args.surface_tension, &f.surface_tension, "surface_tension") {
        body = body.with_surface_tension(s.non_negative()?)?;
    }
    Ok(body)
}

pub fn thermal(
    cfg: &Loaded,
    ambient: Option<f64>,
    coefficient: Option<f64>,
    context: &str,
) -> Result<Option<ThermalParams>, CliError> {
    let f = &cfg.file.thermal;
    let ambient = cfg.pick(ambient, &f.ambient, "ambient");
    let coefficient = cfg.pick(coefficient, &f.coefficient, "coefficient");
    match (ambient, coefficient) {
        (None, None) => Ok(None),
        (a, c) => Ok(Some(ThermalParams::new(
            require(a, "ambient", context)?.non_negative()?,
            require(c, "coefficient", context)?.positive()?,
        )?)),
    }
}
