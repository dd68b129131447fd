//! Optical spin-up `dΩ/dt = M(Ω)/I`, torque evaluated quasi-statically at the
//! instantaneous rotation rate.

use crate::dynamics::body::{centrifugal_burst_frequency, RigidBodyParams};
use crate::dynamics::integrator::{dopri_step, step_factor};
use crate::dynamics::thermal::{equilibrium_temperature, ThermalParams};
use crate::error::{invalid, Error, Result};
use crate::field::DriveField;
use crate::material::TorqueShape;
use crate::model::{finite, non_negative, OscillatorModel};
use crate::response::{cross_sections, Channels};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    TargetReached,
    /// Equilibrium temperature exceeded the melting point.
    Melt,
    /// Rotation reached the centrifugal burst estimate.
    Burst,
    MaxTime,
    StepLimit,
}

impl Termination {
    pub fn name(self) -> &'static str {
        match self {
            Termination::TargetReached => "target",
            Termination::Melt => "melt",
            Termination::Burst => "burst",
            Termination::MaxTime => "max-time",
            Termination::StepLimit => "step-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinUpTrajectory {
    /// `(t, Ω)` at every accepted step, starting at `(0, Ω_init)`.
    pub samples: Vec<(f64, f64)>,
    pub termination: Termination,
}

impl SpinUpTrajectory {
    pub fn final_time(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.0)
    }

    pub fn final_rotation(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinUpControls {
    pub rel_tol: f64,
    pub max_time: f64,
    pub max_steps: usize,
    pub shape: TorqueShape,
    /// Stop with [`Termination::Melt`] when the heating equilibrium at the
    /// current rotation exceeds the body's melting temperature.
    pub thermal: Option<ThermalParams>,
    /// Stop with [`Termination::Burst`] at the centrifugal break-up estimate.
    pub check_burst: bool,
}

impl Default for SpinUpControls {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            max_time: f64::INFINITY,
            max_steps: 1_000_000,
            shape: TorqueShape::Rod,
            thermal: None,
            check_burst: false,
        }
    }
}

struct Problem<'a> {
    model: &'a OscillatorModel,
    drive: &'a DriveField,
    inertia: f64,
    multiplier: f64,
}

impl Problem<'_> {
    /// dΩ/dt. Lossless resonances are reported as zero acceleration, which
    /// stalls the trajectory instead of producing infinities.
    fn rate(&self, rotation: f64) -> f64 {
        match Channels::new(self.model, self.drive, rotation) {
            Ok(ch) => self.multiplier * ch.torque(self.model) / self.inertia,
            Err(_) => 0.0,
        }
    }
}

fn melts(
    model: &OscillatorModel,
    drive: &DriveField,
    body: &RigidBodyParams,
    thermal: Option<&ThermalParams>,
    rotation: f64,
) -> Result<bool> {
    let Some(th) = thermal else {
        return Ok(false);
    };
    if !body.melting_temperature.is_finite() {
        return Ok(false);
    }
    let sigma = cross_sections(model, drive, rotation)?.absorption;
    let power = sigma * drive.intensity(model.light_speed);
    Ok(equilibrium_temperature(th, power)? > body.melting_temperature)
}

/// Integrate the spin-up from `initial` toward `target` (rad/s).
pub fn spin_up_trajectory(
    model: &OscillatorModel,
    drive: &DriveField,
    body: &RigidBodyParams,
    initial: f64,
    target: f64,
    controls: &SpinUpControls,
) -> Result<SpinUpTrajectory> {
    non_negative("initial_rotation", initial)?;
    finite("target_rotation", target)?;
    if target < initial {
        return Err(invalid(
            "target_rotation",
            "must not be below the initial rotation",
        ));
    }
    if !(controls.rel_tol > 0.0 && controls.rel_tol < 1.0) {
        return Err(invalid("rel_tol", "must lie in (0, 1)"));
    }

    let problem = Problem {
        model,
        drive,
        inertia: body.moment_of_inertia,
        multiplier: controls.shape.multiplier(),
    };
    let mut samples = vec![(0.0, initial)];
    let done = |samples: Vec<(f64, f64)>, termination| {
        Ok(SpinUpTrajectory {
            samples,
            termination,
        })
    };

    if target == initial {
        return done(samples, Termination::TargetReached);
    }

    let start_torque = problem.rate(initial) * body.moment_of_inertia;
    if start_torque <= 0.0 || !start_torque.is_finite() {
        return Err(Error::UnreachableTarget {
            target,
            torque: start_torque,
        });
    }

    let (stop, stop_reason) = match controls.check_burst {
        true if body.surface_tension > 0.0 => {
            let burst = centrifugal_burst_frequency(body);
            if burst <= initial {
                return done(samples, Termination::Burst);
            }
            if burst < target {
                (burst, Termination::Burst)
            } else {
                (target, Termination::TargetReached)
            }
        }
        _ => (target, Termination::TargetReached),
    };

    let thermal = controls.thermal.as_ref();
    if melts(model, drive, body, thermal, initial)? {
        return done(samples, Termination::Melt);
    }

    let f = |y: f64| problem.rate(y);
    let rtol = controls.rel_tol;
    let atol = rtol * 1e-3 * stop.abs().max(f64::MIN_POSITIVE);
    let mut t = 0.0;
    let mut y = initial;
    let mut h = 0.01 * (stop - initial) / problem.rate(initial);

    for _ in 0..controls.max_steps {
        if t + h > controls.max_time {
            h = controls.max_time - t;
        }
        let step = dopri_step(&f, y, h);
        let scale = atol + rtol * y.abs().max(step.y.abs());
        let err = step.error.abs() / scale;
        if err > 1.0 || !step.y.is_finite() {
            h *= step_factor(err).min(0.5);
            continue;
        }
        // The exact solution never turns back while the torque is positive;
        // an overshoot past the torque zero means the step was too long.
        if step.y < y || (step.y < stop && f(step.y) < 0.0) {
            h *= 0.5;
            continue;
        }

        if step.y >= stop {
            let h_hit = crossing_step(&f, y, h, stop);
            samples.push((t + h_hit, stop));
            return done(samples, stop_reason);
        }

        t += h;
        y = step.y;
        samples.push((t, y));

        if melts(model, drive, body, thermal, y)? {
            return done(samples, Termination::Melt);
        }
        if t >= controls.max_time {
            return done(samples, Termination::MaxTime);
        }
        h *= step_factor(err);
    }
    done(samples, Termination::StepLimit)
}

/// Sub-step `h*` in `(0, h]` whose Dormand–Prince update lands on `level`.
fn crossing_step<F: Fn(f64) -> f64>(f: &F, y: f64, h: f64, level: f64) -> f64 {
    let g = |s: f64| dopri_step(f, y, s).y - level;
    let (mut lo, mut hi) = (0.0, h);
    let (mut g_lo, mut g_hi) = (y - level, g(h));
    if g_hi == 0.0 {
        return h;
    }
    // Illinois-modified regula falsi.
    let mut side = 0i8;
    for _ in 0..200 {
        let mid = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        let mid = if mid > lo && mid < hi {
            mid
        } else {
            0.5 * (lo + hi)
        };
        let gm = g(mid);
        if gm == 0.0 || (hi - lo) <= 1e-15 * hi {
            return mid;
        }
        if gm < 0.0 {
            lo = mid;
            g_lo = gm;
            if side == -1 {
                g_hi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            g_hi = gm;
            if side == 1 {
                g_lo *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (lo + hi)
}

/// Time to spin up from rest to `target`.
pub fn time_to_target(
    model: &OscillatorModel,
    drive: &DriveField,
    body: &RigidBodyParams,
    target: f64,
) -> Result<f64> {
    time_to_target_with(model, drive, body, target, &SpinUpControls::default())
}

pub fn time_to_target_with(
    model: &OscillatorModel,
    drive: &DriveField,
    body: &RigidBodyParams,
    target: f64,
    controls: &SpinUpControls,
) -> Result<f64> {
    let traj = spin_up_trajectory(model, drive, body, 0.0, target, controls)?;
    match traj.termination {
        Termination::TargetReached => Ok(traj.final_time()),
        other => Err(Error::TargetNotReached {
            reason: other.name().to_string(),
        }),
    }
}
