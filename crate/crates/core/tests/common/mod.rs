//! Independent oracles shared by the integration tests. Nothing here calls
//! the closed-form response code it is used to check.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn report(id: &str, what: &str, pass: bool, detail: impl std::fmt::Display) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id}: {what} ({detail})");
}

/// Plain oscillator parameters for the oracles, deliberately not the
/// library's model type.
#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub coupling: f64,
    pub w0: f64,
    pub gamma: f64,
    pub tau: f64,
    pub c: f64,
}

/// Cross sections straight from the textbook expressions, with the
/// scattering prefactor written as `Q⁴/3m²c⁴ = k²/3c⁴` (only equal to the
/// library's τ-form for physically linked parameters).
#[derive(Debug, Clone, Copy)]
pub struct OracleSections {
    pub torque: f64,
    pub mech: f64,
    pub abs: f64,
    pub elastic: f64,
    pub up: f64,
    pub down: f64,
    pub ext: f64,
}

pub fn oracle_sections(
    p: &Params,
    w: f64,
    rot: f64,
    ex: Complex64,
    ey: Complex64,
) -> OracleSections {
    let i = Complex64::i();
    let e_p = ex + i * ey;
    let e_m = ex - i * ey;
    let e2 = ex.norm_sqr() + ey.norm_sqr();
    let wp = w + rot;
    let wm = w - rot;
    let d = |s: f64| -> Complex64 {
        Complex64::new(p.w0 * p.w0 - rot * rot, 0.0)
            - s * (s + i * p.gamma)
            - i * p.tau * s * (s * s + 3.0 * rot * rot)
    };
    let dp = d(wp).norm_sqr();
    let dm = d(wm).norm_sqr();
    let rp = if e_p.norm_sqr() == 0.0 {
        0.0
    } else {
        e_p.norm_sqr() / e2 / dp
    };
    let rm = if e_m.norm_sqr() == 0.0 {
        0.0
    } else {
        e_m.norm_sqr() / e2 / dm
    };
    let k = p.coupling;
    let torque = k / 2.0
        * e2
        * (-(p.gamma * wp + p.tau * (w + 2.0 * rot).powi(3)) * rp
            + (p.gamma * wm + p.tau * (w - 2.0 * rot).powi(3)) * rm);
    let intensity = p.c / (2.0 * PI) * e2;
    let scat = PI * k * k / (3.0 * p.c.powi(4));
    OracleSections {
        torque,
        mech: torque * rot / intensity,
        abs: PI * p.gamma * k / p.c * (wp * wp * rp + wm * wm * rm),
        elastic: scat * w.powi(4) * (rp + rm),
        up: scat * (w + 2.0 * rot).powi(4) * rp,
        down: scat * (w - 2.0 * rot).powi(4) * rm,
        ext: PI * k * w / p.c
            * (wp * (p.gamma + p.tau * (wp * wp + 3.0 * rot * rot)) * rp
                + wm * (p.gamma + p.tau * (wm * wm + 3.0 * rot * rot)) * rm),
    }
}

/// Lab-frame field components `(E·ρ̂, E·φ̂)` at time `t`.
pub fn projected_field(w: f64, rot: f64, ex: Complex64, ey: Complex64, t: f64) -> (f64, f64) {
    let ph = Complex64::from_polar(1.0, -w * t);
    let fx = 2.0 * (ex * ph).re;
    let fy = 2.0 * (ey * ph).re;
    let (s, c) = (rot * t).sin_cos();
    (fx * c + fy * s, -fx * s + fy * c)
}

/// Period averages of the torque `QρE·φ̂ − 2mΩρρ̇` and the friction power
/// `mγρ̇²` after integrating the τ = 0 radial equation from rest with RK4.
/// Uses Q = m = 1, so the coupling is 1.
pub struct TimeDomain {
    pub torque: f64,
    pub absorbed_power: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn time_domain_average(
    w0: f64,
    gamma: f64,
    w: f64,
    rot: f64,
    ex: Complex64,
    ey: Complex64,
    settle: f64,
    period: f64,
    steps_per_period: usize,
) -> TimeDomain {
    let h = period / steps_per_period as f64;
    let stiffness = w0 * w0 - rot * rot;
    let accel =
        |t: f64, x: f64, v: f64| projected_field(w, rot, ex, ey, t).0 - stiffness * x - gamma * v;
    let periods = (settle / period).ceil() as usize;
    let mut x = 0.0;
    let mut v = 0.0;
    let rk4 = |t: f64, x: &mut f64, v: &mut f64| {
        let (x0, v0) = (*x, *v);
        let k1x = v0;
        let k1v = accel(t, x0, v0);
        let k2x = v0 + 0.5 * h * k1v;
        let k2v = accel(t + 0.5 * h, x0 + 0.5 * h * k1x, v0 + 0.5 * h * k1v);
        let k3x = v0 + 0.5 * h * k2v;
        let k3v = accel(t + 0.5 * h, x0 + 0.5 * h * k2x, v0 + 0.5 * h * k2v);
        let k4x = v0 + h * k3v;
        let k4v = accel(t + h, x0 + h * k3x, v0 + h * k3v);
        *x = x0 + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        *v = v0 + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    };
    for k in 0..periods * steps_per_period {
        rk4(k as f64 * h, &mut x, &mut v);
    }
    let t_start = (periods * steps_per_period) as f64 * h;
    let (mut m_sum, mut p_sum) = (0.0, 0.0);
    for k in 0..steps_per_period {
        let tk = t_start + k as f64 * h;
        let (_, e_phi) = projected_field(w, rot, ex, ey, tk);
        m_sum += x * e_phi - 2.0 * rot * x * v;
        p_sum += gamma * v * v;
        rk4(tk, &mut x, &mut v);
    }
    TimeDomain {
        torque: m_sum / steps_per_period as f64,
        absorbed_power: p_sum / steps_per_period as f64,
    }
}

/// Composite 5-point Gauss–Legendre quadrature.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        0.538_469_310_105_683_1,
        -0.538_469_310_105_683_1,
        0.906_179_845_938_664,
        -0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            X.iter()
                .zip(W)
                .map(|(x, wt)| wt * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| (lo.ln() + (hi.ln() - lo.ln()) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn random_jones(r: &mut ChaCha8Rng) -> (Complex64, Complex64) {
    let mut c = || Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
    (c(), c())
}

pub fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}
