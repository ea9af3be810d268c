//! Dynamics core for the semiclassical Jaynes-Cummings model with atomic
//! recoil, at zero and at finite temperature.
//!
//! The finite-temperature flow is obtained through thermofield dynamics: the
//! field mode is doubled with a tilde partner and mixed with it by a
//! Bogoliubov rotation whose angle is fixed by the inverse temperature.
//!
//! Everything here is `no_std` (with `alloc`) and free of IO. The companion
//! `thermocav` crate carries configuration, file formats and the CLI.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod integrate;
pub mod model;
pub mod thermal;

pub use error::Error;
pub use experiment::{AnyTrajectory, Experiment, InitialConditions};
pub use integrate::{IntegrationSpec, Method, Trajectory, VectorField};
pub use model::{
    SystemParams, ThermalField, ThermalState, Variant, ZeroTField, ZeroTState,
};
pub use thermal::{thermal_factors, TemperatureSpec, ThermalFactors};

pub type Result<T, E = Error> = core::result::Result<T, E>;
