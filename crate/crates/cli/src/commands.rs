//! Subcommand implementations.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rotospin::dynamics::{
    centrifugal_burst_frequency, heating_curve, spin_up_trajectory, SpinUpControls,
};
use rotospin::export::{
    fmt_f64, parse_scan_csv, unbalanced_rows, write_long_csv, write_pairs_csv, write_scan_csv,
    write_scan_metadata,
};
use rotospin::gain::{ensemble_extinction, intensity_profile, EnsembleMember, MediumSpec};
use rotospin::locus::{resonance_locus, Branch};
use rotospin::material::TorqueShape;
use rotospin::scan::{
    grid_scan, Axis, Normalization, Preset, PresetRequest, ScanGrid, ScanRequest, SpectrumRequest,
};
use rotospin::{cross_sections, torque, OscillatorModel, Polarization, UnitMode, IDENTITY_TOL};

use crate::config::{require, Loaded, Param};
use crate::error::CliError;
use crate::resolve::{self, ModelDefaults};
use crate::{
    AmplifyArgs, Cli, Format, PointArgs, ScanArgs, SpectrumArgs, SpinupArgs, ThermalArgs, Units,
};

/// Write `bytes` to `path`, or to stdout when no path is given.
fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, bytes)
            .map_err(|e| CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", p.display())))),
        None => {
            io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

/// Summary lines go to stdout when data went to a file, else to stderr.
fn summary(output: Option<&Path>, lines: &[(&str, String)]) {
    for (k, v) in lines {
        if output.is_some() {
            println!("{k}={v}");
        } else {
            eprintln!("{k}={v}");
        }
    }
}

fn output_path(cli: &Cli, cfg: &Loaded) -> Option<PathBuf> {
    cfg.pick(cli.output.clone(), &cfg.file.output, "output")
        .map(|p| p.value)
}

fn mode_name(model: &OscillatorModel) -> &'static str {
    match model.mode {
        UnitMode::Physical => "physical",
        UnitMode::Normalized => "normalized",
    }
}

pub fn point(cli: &Cli, cfg: &Loaded, args: &PointArgs) -> Result<(), CliError> {
    let model = resolve::model(cli, cfg, ModelDefaults::default())?;
    let drive = resolve::drive(cli, cfg, &model, "point")?;
    let rotation = resolve::rotation(cli, cfg)
        .unwrap_or(Param::default(0.0, "Omega"))
        .finite()?;
    let s = cross_sections(&model, &drive, rotation)?;
    let m = torque(&model, &drive, rotation)?;
    let scale = s.partial_scale();
    let relative = if scale > 0.0 {
        s.balance_residual().abs() / scale
    } else {
        0.0
    };
    let balanced = s.is_balanced(IDENTITY_TOL);

    let rows = [
        ("mode", mode_name(&model).to_string()),
        ("omega", fmt_f64(drive.frequency)),
        ("Omega", fmt_f64(rotation)),
        (
            "polarization",
            resolve::polarization(cli, cfg, Polarization::Lcp)?
                .name()
                .to_string(),
        ),
        ("intensity", fmt_f64(drive.intensity(model.light_speed))),
        ("torque", fmt_f64(m)),
        ("sigma_mech", fmt_f64(s.mechanical)),
        ("sigma_abs", fmt_f64(s.absorption)),
        ("sigma_elastic", fmt_f64(s.elastic)),
        ("sigma_in_plus", fmt_f64(s.inelastic_plus)),
        ("sigma_in_minus", fmt_f64(s.inelastic_minus)),
        ("sigma_ext", fmt_f64(s.extinction)),
        ("balance_residual", fmt_f64(s.balance_residual())),
        ("balance_relative", fmt_f64(relative)),
        ("balanced", balanced.to_string()),
    ];
    let mut out = String::new();
    match args.format {
        Format::Table => {
            out.push_str(&format!("{:<18}{}\n", "quantity", "value"));
            for (k, v) in &rows {
                out.push_str(&format!("{k:<18}{v}\n"));
            }
        }
        Format::Kv => {
            for (k, v) in &rows {
                out.push_str(&format!("{k}={v}\n"));
            }
        }
    }
    emit(output_path(cli, cfg).as_deref(), out.as_bytes())?;
    if balanced {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "power balance residual {relative:.3e} exceeds {IDENTITY_TOL:e}"
        )))
    }
}

fn preset(name: Option<Param<String>>) -> Result<Option<(Preset, Param<String>)>, CliError> {
    name.map(|p| {
        Preset::from_name(&p.value)
            .map(|preset| (preset, p.clone()))
            .ok_or_else(|| p.fail(format!("unknown preset `{}`", p.value)))
    })
    .transpose()
}

fn axis(
    cfg: &Loaded,
    base: Axis,
    min: (Option<f64>, &Option<toml::Spanned<f64>>, &'static str),
    max: (Option<f64>, &Option<toml::Spanned<f64>>, &'static str),
    count: (Option<usize>, &Option<toml::Spanned<usize>>, &'static str),
) -> Result<Axis, CliError> {
    let lo = cfg
        .pick(min.0, min.1, min.2)
        .map_or(Ok(base.min), |p| p.finite())?;
    let hi = cfg
        .pick(max.0, max.1, max.2)
        .map_or(Ok(base.max), |p| p.finite())?;
    let n = cfg
        .pick(count.0, count.1, count.2)
        .map_or(Ok(base.count), |p| p.at_least(1))?;
    Ok(Axis::new(lo, hi, n)?)
}

fn grid_model(
    cli: &Cli,
    cfg: &Loaded,
    base: &OscillatorModel,
    from_preset: bool,
) -> Result<OscillatorModel, CliError> {
    if from_preset && !resolve::model_overridden(cli, cfg) {
        return Ok(*base);
    }
    resolve::model(
        cli,
        cfg,
        ModelDefaults {
            gamma: base.damping_rate,
            tau: base.radiative_time,
        },
    )
}

fn normalization(units: Option<Units>, default: Normalization) -> Normalization {
    match units {
        None => default,
        Some(Units::Raw) => Normalization::Raw,
        Some(Units::Figure) => Normalization::FigureUnits,
    }
}

/// Serialize, re-parse and re-check the balance of every row, then write
/// the table, its sidecar and the optional long-format table.
fn write_grid(output: Option<&Path>, long: Option<&Path>, grid: &ScanGrid) -> Result<(), CliError> {
    let mut csv = Vec::new();
    write_scan_csv(grid, &mut csv)?;
    let rows = parse_scan_csv(csv.as_slice())?;
    let bad = unbalanced_rows(&rows, &grid.scales, IDENTITY_TOL);
    emit(output, &csv)?;
    if let Some(path) = output {
        let mut meta = Vec::new();
        write_scan_metadata(grid, &mut meta)?;
        emit(Some(&sidecar(path)), &meta)?;
    }
    if let Some(path) = long {
        let mut buf = Vec::new();
        write_long_csv(grid, &mut buf)?;
        emit(Some(path), &buf)?;
    }
    summary(
        output,
        &[
            ("rows", rows.len().to_string()),
            ("singular", grid.singular_count().to_string()),
            ("units", grid.normalization.name().to_string()),
        ],
    );
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{} rows fail the power balance after re-parsing (first: data row {})",
            bad.len(),
            bad[0] + 1
        )))
    }
}

/// `<output>.meta`.
pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

fn write_locus(path: &Path, natural_frequency: f64) -> Result<(), CliError> {
    let mut out = String::from("branch,omega,Omega\n");
    for (branch, name) in [(Branch::Upper, "upper"), (Branch::Lower, "lower")] {
        for (w, r) in resonance_locus(natural_frequency, branch, 360)? {
            out.push_str(&format!("{name},{},{}\n", fmt_f64(w), fmt_f64(r)));
        }
    }
    emit(Some(path), out.as_bytes())
}

pub fn scan(cli: &Cli, cfg: &Loaded, args: &ScanArgs) -> Result<(), CliError> {
    let f = &cfg.file.scan;
    let chosen = preset(cfg.pick(args.preset.clone(), &f.preset, "preset"))?;
    let base = match &chosen {
        Some((p, origin)) => match p.request() {
            PresetRequest::Grid(req) => req,
            PresetRequest::Spectrum(_) => {
                return Err(origin.fail(format!(
                    "`{}` is a spectrum preset; use `spectrum`",
                    p.name()
                )))
            }
        },
        None => ScanRequest {
            model: OscillatorModel::normalized(0.1, 0.0)?,
            polarization: Polarization::Lcp,
            omega: Axis::new(0.0, 2.0, 256)?,
            rotation: Axis::new(0.0, 2.0, 256)?,
            normalization: Normalization::Raw,
        },
    };
    let model = grid_model(cli, cfg, &base.model, chosen.is_some())?;
    let req = ScanRequest {
        model,
        polarization: resolve::polarization(cli, cfg, base.polarization)?,
        omega: axis(
            cfg,
            base.omega,
            (args.omega_min, &f.omega_min, "omega_min"),
            (args.omega_max, &f.omega_max, "omega_max"),
            (args.omega_count, &f.omega_count, "omega_count"),
        )?,
        rotation: axis(
            cfg,
            base.rotation,
            (args.rotation_min, &f.rotation_min, "Omega_min"),
            (args.rotation_max, &f.rotation_max, "Omega_max"),
            (args.rotation_count, &f.rotation_count, "Omega_count"),
        )?,
        normalization: normalization(
            resolve::units(args.units, cfg, &f.units)?,
            base.normalization,
        ),
    };
    let grid = grid_scan(&req)?;
    let output = output_path(cli, cfg);
    let long = cfg
        .pick(args.long.clone(), &f.long, "long")
        .map(|p| p.value);
    if let Some(path) = cfg.pick(args.locus.clone(), &f.locus, "locus") {
        write_locus(&path.value, model.natural_frequency)?;
    }
    write_grid(output.as_deref(), long.as_deref(), &grid)
}

pub fn spectrum(cli: &Cli, cfg: &Loaded, args: &SpectrumArgs) -> Result<(), CliError> {
    let f = &cfg.file.scan;
    let chosen = preset(cfg.pick(args.preset.clone(), &f.preset, "preset"))?;
    let base = match &chosen {
        Some((p, origin)) => match p.request() {
            PresetRequest::Spectrum(req) => Some(req),
            PresetRequest::Grid(_) => {
                return Err(origin.fail(format!("`{}` is a map preset; use `scan`", p.name())))
            }
        },
        None => None,
    };
    let rotation = match (resolve::rotation(cli, cfg), &base) {
        (Some(p), _) => p.finite()?,
        (None, Some(b)) => b.rotation,
        (None, None) => {
            return Err(CliError::Config(
                "missing `Omega` (spectrum without preset)".into(),
            ))
        }
    };
    let base = base.unwrap_or(SpectrumRequest {
        model: OscillatorModel::normalized(0.1, 0.0)?,
        polarization: Polarization::Lcp,
        rotation,
        omega: Axis::new(0.0, 3.0, 601)?,
        normalization: Normalization::Raw,
    });
    let model = grid_model(cli, cfg, &base.model, chosen.is_some())?;
    let req = SpectrumRequest {
        model,
        polarization: resolve::polarization(cli, cfg, base.polarization)?,
        rotation,
        omega: axis(
            cfg,
            base.omega,
            (args.omega_min, &f.omega_min, "omega_min"),
            (args.omega_max, &f.omega_max, "omega_max"),
            (args.omega_count, &f.omega_count, "omega_count"),
        )?,
        normalization: normalization(
            resolve::units(args.units, cfg, &f.units)?,
            base.normalization,
        ),
    };
    let grid = grid_scan(&req.as_scan())?;
    let output = output_path(cli, cfg);
    let long = cfg
        .pick(args.long.clone(), &f.long, "long")
        .map(|p| p.value);
    write_grid(output.as_deref(), long.as_deref(), &grid)
}

pub fn spinup(cli: &Cli, cfg: &Loaded, args: &SpinupArgs) -> Result<(), CliError> {
    let f = &cfg.file.spinup;
    let model = resolve::model(cli, cfg, ModelDefaults::default())?;
    let drive = resolve::drive(cli, cfg, &model, "spinup")?;
    let body = resolve::body(&args.body, cli, cfg)?;
    let target = require(
        cfg.pick(args.target, &f.target, "target"),
        "target",
        "spinup",
    )?
    .finite()?;
    let initial = cfg
        .pick(args.initial, &f.initial, "initial")
        .unwrap_or(Param::default(0.0, "initial"))
        .non_negative()?;
    let defaults = SpinUpControls::default();
    let sphere = args.sphere_torque
        || cfg
            .pick(None, &f.sphere_torque, "sphere_torque")
            .is_some_and(|p| p.value);
    let burst = cfg.pick(
        args.check_burst.then_some(true),
        &f.check_burst,
        "check_burst",
    );
    let check_burst = burst.as_ref().is_some_and(|p| p.value);
    if check_burst && body.surface_tension <= 0.0 {
        return Err(burst
            .expect("set")
            .fail("the burst check needs a positive surface_tension"));
    }
    let controls = SpinUpControls {
        rel_tol: cfg
            .pick(args.rel_tol, &f.rel_tol, "rel_tol")
            .map_or(Ok(defaults.rel_tol), |p| p.positive())?,
        max_time: cfg
            .pick(args.max_time, &f.max_time, "max_time")
            .map_or(Ok(defaults.max_time), |p| p.positive())?,
        max_steps: cfg
            .pick(args.max_steps, &f.max_steps, "max_steps")
            .map_or(Ok(defaults.max_steps), |p| p.at_least(1))?,
        shape: if sphere {
            TorqueShape::LossySphereApprox
        } else {
            TorqueShape::Rod
        },
        thermal: resolve::thermal(cfg, args.ambient, args.coefficient, "spinup melt check")?,
        check_burst,
    };
    let traj = spin_up_trajectory(&model, &drive, &body, initial, target, &controls)?;
    let output = output_path(cli, cfg);
    let mut buf = Vec::new();
    write_pairs_csv("t,Omega", &traj.samples, &mut buf)?;
    emit(output.as_deref(), &buf)?;
    let mut lines = vec![
        ("termination", traj.termination.name().to_string()),
        ("final_time", fmt_f64(traj.final_time())),
        ("final_Omega", fmt_f64(traj.final_rotation())),
        ("samples", traj.samples.len().to_string()),
    ];
    if check_burst {
        lines.push(("burst_Omega", fmt_f64(centrifugal_burst_frequency(&body))));
    }
    summary(output.as_deref(), &lines);
    Ok(())
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.log10(), hi.log10());
    (0..n)
        .map(|k| match k {
            0 => lo,
            k if k == n - 1 => hi,
            k => 10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64),
        })
        .collect()
}

pub fn thermal(cli: &Cli, cfg: &Loaded, args: &ThermalArgs) -> Result<(), CliError> {
    let f = &cfg.file.thermal;
    let model = resolve::model(cli, cfg, ModelDefaults::default())?;
    let drive = resolve::drive(cli, cfg, &model, "thermal")?;
    let rotation = resolve::rotation(cli, cfg)
        .unwrap_or(Param::default(0.0, "Omega"))
        .finite()?;
    let params = resolve::thermal(cfg, args.ambient, args.coefficient, "thermal")?
        .ok_or_else(|| CliError::Config("missing `ambient` and `coefficient` (thermal)".into()))?;
    let lo = require(
        cfg.pick(args.intensity_min, &f.intensity_min, "intensity_min"),
        "intensity_min",
        "thermal",
    )?;
    let hi = cfg
        .pick(args.intensity_max, &f.intensity_max, "intensity_max")
        .unwrap_or(lo.clone());
    let n = cfg
        .pick(args.count, &f.count, "count")
        .unwrap_or(Param::default(50, "count"))
        .at_least(1)?;
    let (lo_v, hi_v) = (lo.positive()?, hi.positive()?);
    if hi_v < lo_v {
        return Err(hi.fail("must not be below intensity_min"));
    }
    let curve = heating_curve(
        &model,
        &drive,
        rotation,
        &params,
        &log_spaced(lo_v, hi_v, n),
    )?;
    let mut out = String::from("intensity,absorbed_power,T_eq\n");
    for p in &curve {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(p.intensity),
            fmt_f64(p.absorbed_power),
            fmt_f64(p.temperature)
        ));
    }
    let output = output_path(cli, cfg);
    emit(output.as_deref(), out.as_bytes())?;
    summary(output.as_deref(), &[("points", curve.len().to_string())]);
    Ok(())
}

pub fn amplify(cli: &Cli, cfg: &Loaded, args: &AmplifyArgs) -> Result<(), CliError> {
    let f = &cfg.file.medium;
    let model = resolve::model(cli, cfg, ModelDefaults::default())?;
    let drive = resolve::drive(cli, cfg, &model, "amplify")?;
    let members = if f.members.is_empty() {
        let rotation = require(
            resolve::rotation(cli, cfg),
            "Omega",
            "amplify without [[medium.members]]",
        )?;
        vec![EnsembleMember {
            model,
            rotation: rotation.finite()?,
            weight: 1.0,
        }]
    } else {
        f.members
            .iter()
            .map(|m| {
                let mut member_model = model;
                if let Some(g) = &m.gamma {
                    member_model = member_model
                        .with_damping(cfg.spanned(g, "members.gamma").non_negative()?)?;
                }
                if let Some(t) = &m.tau {
                    let t = cfg.spanned(t, "members.tau");
                    if model.mode == UnitMode::Physical {
                        return Err(t.fail("τ is derived from the coupling in physical mode"));
                    }
                    member_model = OscillatorModel::new(
                        model.coupling,
                        model.natural_frequency,
                        member_model.damping_rate,
                        t.non_negative()?,
                        model.light_speed,
                    )?;
                }
                Ok(EnsembleMember {
                    model: member_model,
                    rotation: cfg.spanned(&m.rotation, "members.Omega").finite()?,
                    weight: cfg.spanned(&m.weight, "members.weight").non_negative()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?
    };
    let n = require(
        cfg.pick(args.number_density, &f.number_density, "number_density"),
        "number_density",
        "amplify",
    )?
    .non_negative()?;
    let length = require(
        cfg.pick(args.path_length, &f.path_length, "path_length"),
        "path_length",
        "amplify",
    )?
    .non_negative()?;
    let samples = cfg
        .pick(args.samples, &f.samples, "samples")
        .unwrap_or(Param::default(101, "samples"))
        .at_least(2)?;
    let i0 = cfg
        .pick(
            args.initial_intensity,
            &f.initial_intensity,
            "initial_intensity",
        )
        .unwrap_or(Param::default(
            drive.intensity(model.light_speed),
            "initial_intensity",
        ))
        .non_negative()?;
    let medium = MediumSpec::new(n, length, members)?;
    let ensemble = ensemble_extinction(&medium, &drive)?;
    let gain = -n * ensemble.mean_extinction;
    let profile = intensity_profile(i0, gain, length, samples)?;
    let output = output_path(cli, cfg);
    let mut buf = Vec::new();
    write_pairs_csv("z,I", &profile, &mut buf)?;
    emit(output.as_deref(), &buf)?;
    let mut lines = vec![
        ("gain", fmt_f64(gain)),
        ("mean_sigma_ext", fmt_f64(ensemble.mean_extinction)),
        ("sustaining_power", fmt_f64(ensemble.mean_sustaining * i0)),
        ("excluded_members", ensemble.excluded.len().to_string()),
        (
            "final_intensity",
            fmt_f64(profile.last().map_or(i0, |p| p.1)),
        ),
    ];
    if gain > 0.0 {
        lines.push(("doubling_length", fmt_f64(std::f64::consts::LN_2 / gain)));
    }
    summary(output.as_deref(), &lines);
    Ok(())
}
