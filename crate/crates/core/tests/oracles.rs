//! Library output against independent oracles: direct evaluation of the
//! textbook expressions, Larmor power of the induced dipole, Rayleigh
//! scattering, and quadrature of the spin-up time.

#![allow(clippy::excessive_precision)]

mod common;

use std::f64::consts::PI;

use rand::Rng;

use common::{gauss_legendre, oracle_sections, random_jones, rng, Params};
use rotospin::dipole::induced_dipole_spectrum;
use rotospin::dynamics::{time_to_target_with, RigidBodyParams, SpinUpControls};
use rotospin::{
    cross_sections, static_polarizability, torque, DriveField, OscillatorModel, Polarization,
};

fn random_linked(r: &mut impl Rng) -> (OscillatorModel, Params) {
    let p = Params {
        coupling: r.gen_range(0.05..2.0),
        w0: r.gen_range(0.5..2.0),
        gamma: r.gen_range(0.0..0.5),
        tau: 0.0,
        c: r.gen_range(1.0..10.0),
    };
    let model = OscillatorModel::physical(p.coupling, p.w0, p.gamma, p.c).unwrap();
    (
        model,
        Params {
            tau: model.radiative_time,
            ..p
        },
    )
}

#[test]
fn closed_form_matches_direct_evaluation() {
    let mut r = rng(11);
    for _ in 0..2000 {
        let (model, p) = random_linked(&mut r);
        let (ex, ey) = random_jones(&mut r);
        let w = r.gen_range(-3.0..3.0);
        let rot = r.gen_range(-3.0..3.0);
        let drive = DriveField::new(w, ex, ey).unwrap();
        let s = cross_sections(&model, &drive, rot).unwrap();
        let o = oracle_sections(&p, w, rot, ex, ey);
        let scale = s.partial_scale();
        for (lib, ora) in [
            (s.mechanical, o.mech),
            (s.absorption, o.abs),
            (s.elastic, o.elastic),
            (s.inelastic_plus, o.up),
            (s.inelastic_minus, o.down),
            (s.extinction, o.ext),
        ] {
            assert!((lib - ora).abs() <= 1e-12 * scale, "{lib} vs {ora}");
        }
        let m = torque(&model, &drive, rot).unwrap();
        assert!((m - o.torque).abs() <= 1e-12 * o.torque.abs().max(1e-300) + 1e-15 * scale);
    }
}

#[test]
fn frozen_reference_point() {
    // Exact rational evaluation at γ = 0.1, LCP, ω = 0.5, Ω = 0.2, ω₀ = c = Q²/m = 1.
    let drive = DriveField::polarized(0.5, Polarization::Lcp, 1.0).unwrap();
    let lossy = OscillatorModel::normalized(0.1, 0.0).unwrap();
    let s = cross_sections(&lossy, &drive, 0.2).unwrap();
    let m = torque(&lossy, &drive, 0.2).unwrap();
    let close = |a: f64, b: f64| (a / b - 1.0).abs() < 1e-13;
    assert!(close(m, 0.039_588_281_868_566_904));
    assert!(close(s.absorption, 0.074_622_153_291_919_079));
    assert!(close(s.mechanical, 0.049_748_102_194_612_720));

    let radiating = OscillatorModel::normalized(0.1, 1e-4).unwrap();
    let s = cross_sections(&radiating, &drive, 0.2).unwrap();
    assert!(close(s.elastic, 2.591_045_696_721_442_0e-5));
    assert!(close(s.inelastic_minus, 4.145_673_114_754_307_3e-8));
    assert!(close(s.extinction, 0.124_396_311_183_252_17));
}

#[test]
fn dipole_lines_radiate_the_scattering_cross_sections() {
    let mut r = rng(12);
    for _ in 0..500 {
        let (model, _) = random_linked(&mut r);
        let (ex, ey) = random_jones(&mut r);
        let w = r.gen_range(0.1..3.0);
        let rot = r.gen_range(0.05..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 };
        let drive = DriveField::new(w, ex, ey).unwrap();
        let s = cross_sections(&model, &drive, rot).unwrap();
        let spec = induced_dipole_spectrum(&model, &drive, rot).unwrap();
        let intensity = drive.intensity(model.light_speed);
        let scale = s.partial_scale();
        let pairs = [
            (spec.elastic, s.elastic),
            (spec.up_shifted, s.inelastic_plus),
            (spec.down_shifted, s.inelastic_minus),
        ];
        for (line, sigma) in pairs {
            let from_line = line.radiated_power(model.light_speed) / intensity;
            assert!(
                (from_line - sigma).abs() <= 1e-12 * scale,
                "{from_line} vs {sigma}"
            );
        }
        let ext = spec.extinction(&drive, model.light_speed).unwrap();
        assert!(
            (ext - s.extinction).abs() <= 1e-12 * scale,
            "{ext} vs {}",
            s.extinction
        );
    }
}

#[test]
fn static_circular_drive_reproduces_rayleigh_scattering() {
    // A fixed rod sees only Ex; with circular light |Ex|² = |E|²/2.
    let mut r = rng(13);
    for _ in 0..200 {
        let (model, p) = random_linked(&mut r);
        let w = r.gen_range(0.1..3.0);
        let drive = DriveField::polarized(w, Polarization::Rcp, r.gen_range(0.1..5.0)).unwrap();
        let alpha = static_polarizability(&model, w).unwrap();
        let s = cross_sections(&model, &drive, 0.0).unwrap();
        let k0 = w / p.c;
        let rayleigh = 0.5 * 8.0 * PI / 3.0 * k0.powi(4) * alpha.norm_sqr();
        let scattered = s.scattering();
        assert!(
            (scattered / rayleigh - 1.0).abs() < 1e-12,
            "{scattered} vs {rayleigh}"
        );
        let optical_theorem = 0.5 * 4.0 * PI * k0 * alpha.im;
        assert!((s.extinction / optical_theorem - 1.0).abs() < 1e-12);
    }
}

#[test]
fn spin_up_time_matches_quadrature() {
    let mut r = rng(14);
    let controls = SpinUpControls::default();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let gamma = r.gen_range(0.05..0.5);
        let model = OscillatorModel::normalized(gamma, r.gen_range(0.0..1e-3)).unwrap();
        let w = r.gen_range(0.3..1.5);
        let drive = DriveField::polarized(w, Polarization::Lcp, r.gen_range(0.5..2.0)).unwrap();
        let inertia = r.gen_range(0.1..10.0);
        let body = RigidBodyParams::new(inertia, 1.0, 1.0).unwrap();
        let target = r.gen_range(0.05..0.45) * w;
        let t = time_to_target_with(&model, &drive, &body, target, &controls).unwrap();
        let quad = gauss_legendre(
            |rot| inertia / torque(&model, &drive, rot).unwrap(),
            0.0,
            target,
            400,
        );
        worst = worst.max((t / quad - 1.0).abs());
    }
    assert!(worst <= 1e-6, "worst relative deviation {worst:.3e}");
}
