//! Invariant suite behind `rotospin validate`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotospin::dipole::{induced_dipole_spectrum, SteadyState};
use rotospin::dynamics::{equilibrium_temperature, ThermalParams};
use rotospin::export::{parse_scan_csv, unbalanced_rows, write_scan_csv};
use rotospin::gain::propagate_intensity;
use rotospin::locus::{resonance_locus, Branch};
use rotospin::material::{optical_theorem_residual, DrudeEllipsoid, DrudeSphere};
use rotospin::scan::{grid_scan, Axis, Normalization, ScanRequest};
use rotospin::{
    cross_sections, denominators, static_polarizability, torque, DriveField, OscillatorModel,
    Polarization, IDENTITY_TOL, SPEED_OF_LIGHT,
};

use crate::error::CliError;
use crate::ValidateArgs;

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn worst(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        pass: value <= limit,
        detail: format!("worst {value:.2e}, limit {limit:.0e}"),
    }
}

fn random_model(r: &mut ChaCha8Rng) -> OscillatorModel {
    OscillatorModel::physical(
        r.gen_range(0.05..2.0),
        r.gen_range(0.5..2.0),
        r.gen_range(0.0..0.5),
        r.gen_range(1.0..10.0),
    )
    .expect("valid ranges")
}

fn random_drive(r: &mut ChaCha8Rng) -> DriveField {
    let mut c = || Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    let (ex, ey) = (c(), c());
    DriveField::new(r.gen_range(-3.0..3.0), ex, ey).expect("non-zero field")
}

fn balance(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let s = cross_sections(&random_model(r), &random_drive(r), r.gen_range(-3.0..3.0))
            .expect("lossy");
        w = w.max(s.balance_residual().abs() / s.partial_scale());
    }
    worst("power balance", w, IDENTITY_TOL)
}

fn mirror(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let (m, d, rot) = (random_model(r), random_drive(r), r.gen_range(-3.0..3.0));
        let a = cross_sections(&m, &d, rot).expect("lossy");
        let b = cross_sections(&m, &d.mirrored(), -rot).expect("lossy");
        let swapped = [
            b.mechanical,
            b.absorption,
            b.elastic,
            b.inelastic_minus,
            b.inelastic_plus,
            b.extinction,
        ];
        let scale = a.partial_scale();
        for (x, y) in a.as_array().into_iter().zip(swapped) {
            w = w.max((x - y).abs() / scale);
        }
    }
    worst("mirror symmetry", w, 1e-12)
}

fn positivity(r: &mut ChaCha8Rng, n: usize) -> Check {
    let negative = (0..n)
        .filter(|_| {
            let s = cross_sections(&random_model(r), &random_drive(r), r.gen_range(-3.0..3.0))
                .expect("lossy");
            s.absorption < 0.0
                || s.elastic < 0.0
                || s.inelastic_plus < 0.0
                || s.inelastic_minus < 0.0
        })
        .count();
    Check {
        name: "non-negative absorption and scattering",
        pass: negative == 0,
        detail: format!("{negative} negative of {n}"),
    }
}

fn static_limit(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let m = random_model(r);
        let omega = r.gen_range(0.3..1.5) * m.natural_frequency;
        let d =
            DriveField::polarized(omega, Polarization::Lcp, r.gen_range(0.1..3.0)).expect("valid");
        let alpha = static_polarizability(&m, omega).expect("lossy");
        let expected = d.field_norm_sqr() * alpha.im;
        w = w.max((torque(&m, &d, 0.0).expect("lossy") / expected - 1.0).abs());
    }
    worst("static torque equals |E|² Im α", w, 1e-12)
}

fn optical_theorem(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let m = random_model(r);
        let omega = r.gen_range(0.5..1.5) * m.natural_frequency;
        let alpha = static_polarizability(&m, omega).expect("lossy");
        let residual = optical_theorem_residual(&m, omega).expect("lossy");
        w = w.max((residual / (-1.0 / alpha).im).abs());
    }
    worst("optical theorem", w, 1e-12)
}

fn radial_equation(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let (m, d) = (random_model(r), random_drive(r));
        let rot = r.gen_range(-2.0..2.0);
        let q_over_m = r.gen_range(0.5..2.0);
        let ss = SteadyState::new(&m, &d, rot, q_over_m).expect("lossy");
        let t = r.gen_range(0.0..50.0);
        let (s, c) = (rot * t).sin_cos();
        let e = d.at(t);
        let rhs = q_over_m * (e[0] * c + e[1] * s);
        let tau = m.radiative_time;
        let terms = [
            ss.derivative(2, t),
            m.damping_rate * ss.derivative(1, t),
            (m.natural_frequency.powi(2) - rot * rot) * ss.displacement(t),
            -tau * ss.derivative(3, t),
            3.0 * tau * rot * rot * ss.derivative(1, t),
        ];
        let lhs: f64 = terms.iter().sum();
        let scale = terms.iter().map(|x| x.abs()).sum::<f64>() + rhs.abs();
        w = w.max((lhs - rhs).abs() / scale);
    }
    worst("steady state solves the radial equation", w, 1e-8)
}

fn dipole_power(r: &mut ChaCha8Rng, n: usize) -> Check {
    let mut w = 0.0f64;
    for _ in 0..n {
        let (m, d) = (random_model(r), random_drive(r));
        let rot = r.gen_range(0.05..2.0);
        let s = cross_sections(&m, &d, rot).expect("lossy");
        let spec = induced_dipole_spectrum(&m, &d, rot).expect("lossy");
        let intensity = d.intensity(m.light_speed);
        let radiated: f64 = spec
            .lines()
            .iter()
            .map(|l| l.radiated_power(m.light_speed))
            .sum();
        w = w.max((radiated / intensity - s.scattering()).abs() / s.partial_scale());
    }
    worst("dipole radiation equals scattering", w, 1e-12)
}

fn locus() -> Check {
    let m = OscillatorModel::new(1.0, 1.5, 0.0, 0.0, 1.0).expect("valid");
    let mut w = 0.0f64;
    for (branch, plus) in [(Branch::Upper, true), (Branch::Lower, false)] {
        for (omega, rot) in resonance_locus(1.5, branch, 97).expect("valid") {
            let d = denominators(&m, omega, rot);
            w = w.max(if plus { d.plus.norm() } else { d.minus.norm() });
        }
    }
    worst("lossless denominator vanishes on the ellipses", w, 1e-12)
}

#[allow(clippy::excessive_precision)]
fn reference_point() -> Check {
    let d = DriveField::polarized(0.5, Polarization::Lcp, 1.0).expect("valid");
    let lossy = OscillatorModel::normalized(0.1, 0.0).expect("valid");
    let radiating = OscillatorModel::normalized(0.1, 1e-4).expect("valid");
    let s = cross_sections(&radiating, &d, 0.2).expect("lossy");
    let pairs = [
        (
            torque(&lossy, &d, 0.2).expect("lossy"),
            0.039_588_281_868_566_904,
        ),
        (
            cross_sections(&lossy, &d, 0.2).expect("lossy").absorption,
            0.074_622_153_291_919_079,
        ),
        (s.elastic, 2.591_045_696_721_442_0e-5),
        (s.extinction, 0.124_396_311_183_252_17),
    ];
    let w = pairs
        .iter()
        .map(|(a, b)| (a / b - 1.0).abs())
        .fold(0.0, f64::max);
    worst("reference point values", w, 1e-13)
}

fn torque_sign() -> Check {
    let m = OscillatorModel::normalized(0.1, 0.0).expect("valid");
    let axis = Axis::new(0.0, 2.0, 64).expect("valid");
    let mut wrong = 0;
    for rot in axis.values() {
        for omega in axis.values() {
            let d = DriveField::polarized(omega, Polarization::Lcp, 1.0).expect("valid");
            let t = torque(&m, &d, rot).expect("lossy");
            let expected = (omega - rot).partial_cmp(&0.0);
            if t.partial_cmp(&0.0) != expected {
                wrong += 1;
            }
        }
    }
    Check {
        name: "circular-drive torque sign follows ω − Ω",
        pass: wrong == 0,
        detail: format!("{wrong} mismatches"),
    }
}

fn csv_round_trip() -> Check {
    let req = ScanRequest {
        model: OscillatorModel::normalized(0.1, 1e-4).expect("valid"),
        polarization: Polarization::Linear,
        omega: Axis::new(0.0, 2.0, 33).expect("valid"),
        rotation: Axis::new(-2.0, 2.0, 33).expect("valid"),
        normalization: Normalization::FigureUnits,
    };
    let grid = grid_scan(&req).expect("valid grid");
    let mut buf = Vec::new();
    write_scan_csv(&grid, &mut buf).expect("in-memory write");
    match parse_scan_csv(buf.as_slice()) {
        Ok(rows) => {
            let bad = unbalanced_rows(&rows, &grid.scales, IDENTITY_TOL).len();
            let exact = rows.iter().zip(&grid.cells).all(|(r, c)| {
                r.sections.as_array().map(f64::to_bits) == c.sections.as_array().map(f64::to_bits)
            });
            Check {
                name: "CSV round trip keeps every row balanced",
                pass: bad == 0 && exact && rows.len() == grid.cells.len(),
                detail: format!("{} rows, {bad} unbalanced, bit-exact {exact}", rows.len()),
            }
        }
        Err(e) => Check {
            name: "CSV round trip keeps every row balanced",
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn doubling_length() -> Check {
    let g = 0.37;
    let i = propagate_intensity(2.5, g, LN_2 / g).expect("valid");
    worst(
        "intensity doubles over ln 2 / g",
        (i / 5.0 - 1.0).abs(),
        4.0 * f64::EPSILON,
    )
}

fn heating() -> Check {
    let th = ThermalParams::new(300.0, 1e-9).expect("valid");
    let at_zero = equilibrium_temperature(&th, 0.0).expect("valid");
    let powers = [1e-3, 1.0, 1e3, 1e6, 1e9];
    let temps: Vec<f64> = powers
        .iter()
        .map(|&p| equilibrium_temperature(&th, p).expect("valid"))
        .collect();
    let rising = temps.windows(2).all(|w| w[1] > w[0]);
    Check {
        name: "heating equilibrium starts at ambient and rises",
        pass: at_zero == 300.0 && rising,
        detail: format!("T(0) = {at_zero}, monotonic {rising}"),
    }
}

fn drude_mapping() -> Check {
    let (wp, g, radius) = (1.37e16, 1e14, 1e-6);
    let sphere = DrudeSphere {
        plasma_frequency: wp,
        damping_rate: g,
        radius,
    }
    .to_model(SPEED_OF_LIGHT)
    .expect("valid");
    let ellipsoid = DrudeEllipsoid {
        plasma_frequency: wp,
        damping_rate: g,
        volume: 4.0 / 3.0 * PI * radius.powi(3),
        depolarization: 1.0 / 3.0,
    }
    .to_model(SPEED_OF_LIGHT)
    .expect("valid");
    let w = (sphere.coupling / ellipsoid.coupling - 1.0)
        .abs()
        .max((sphere.natural_frequency / ellipsoid.natural_frequency - 1.0).abs());
    worst("sphere equals isotropic ellipsoid", w, 1e-14)
}

pub fn run(args: &ValidateArgs) -> Result<(), CliError> {
    if args.samples == 0 {
        return Err(CliError::Config("--samples must be positive".into()));
    }
    let mut r = ChaCha8Rng::seed_from_u64(args.seed);
    let n = args.samples;
    let checks = [
        balance(&mut r, n),
        mirror(&mut r, n),
        positivity(&mut r, n),
        static_limit(&mut r, n),
        optical_theorem(&mut r, n),
        radial_equation(&mut r, n),
        dipole_power(&mut r, n),
        locus(),
        reference_point(),
        torque_sign(),
        csv_round_trip(),
        doubling_length(),
        heating(),
        drude_mapping(),
    ];
    for c in &checks {
        println!(
            "{} {} ({})",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!(
        "passed {passed}/{}, failed {}",
        checks.len(),
        checks.len() - passed
    );
    if passed == checks.len() {
        Ok(())
    } else {
        Err(CliError::Validation(format!(
            "{} of {} checks failed",
            checks.len() - passed,
            checks.len()
        )))
    }
}
