//! Rotational spin-up, heating equilibrium and centrifugal break-up.

pub mod body;
mod integrator;
pub mod spinup;
pub mod thermal;

pub use body::{centrifugal_burst_frequency, RigidBodyParams};
pub use spinup::{
    spin_up_trajectory, time_to_target, time_to_target_with, SpinUpControls, SpinUpTrajectory,
    Termination,
};
pub use thermal::{equilibrium_temperature, heating_curve, HeatingPoint, ThermalParams};
