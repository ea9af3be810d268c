//! Inverse temperature and the Bogoliubov factors it induces on the cavity
//! mode.
//!
//! The inverse temperature is taken relative to the cavity frequency,
//! `beta = omega_f / (k_B T)`. Below `beta ~ 0.01` the mixing factor
//! `sinh(theta) ~ beta^(-1/2)` is large enough that the flow becomes stiff
//! for the default fixed step; nothing caps it here.

use crate::{Error, Result};

/// Below this inverse temperature the thermal flow is stiff at the default step.
pub const STIFF_BETA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TemperatureSpec {
    #[default]
    Zero,
    /// Dimensionless `beta = omega_f / (k_B T)`.
    InverseTemperature(f64),
}

impl TemperatureSpec {
    pub fn beta(beta: f64) -> Result<Self> {
        let t = TemperatureSpec::InverseTemperature(beta);
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TemperatureSpec::Zero => Ok(()),
            TemperatureSpec::InverseTemperature(b) if b > 0.0 && b.is_finite() => Ok(()),
            TemperatureSpec::InverseTemperature(b) => Err(Error::InvalidTemperature(b)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TemperatureSpec::Zero)
    }

    /// `true` when the factors are large enough to make the default step stiff.
    pub fn is_stiff(&self) -> bool {
        matches!(*self, TemperatureSpec::InverseTemperature(b) if b < STIFF_BETA)
    }
}

/// Bogoliubov pair `(sinh theta, cosh theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalFactors {
    pub sinh_theta: f64,
    pub cosh_theta: f64,
}

impl ThermalFactors {
    pub const ZERO_TEMPERATURE: ThermalFactors = ThermalFactors {
        sinh_theta: 0.0,
        cosh_theta: 1.0,
    };

    /// Mean thermal occupation `sinh^2 theta` of the mode.
    pub fn occupation(&self) -> f64 {
        self.sinh_theta * self.sinh_theta
    }
}

/// `sinh^2 theta = 1 / (e^beta - 1)`, evaluated through `expm1` so that small
/// `beta` keeps its digits. Large `beta` underflows to exactly zero.
pub fn thermal_factors(t: TemperatureSpec) -> Result<ThermalFactors> {
    t.validate()?;
    match t {
        TemperatureSpec::Zero => Ok(ThermalFactors::ZERO_TEMPERATURE),
        TemperatureSpec::InverseTemperature(beta) => {
            let sinh2 = 1.0 / libm::expm1(beta);
            let sinh_theta = libm::sqrt(sinh2);
            let cosh_theta = libm::sqrt(1.0 + sinh2);
            Ok(ThermalFactors {
                sinh_theta,
                cosh_theta,
            })
        }
    }
}
