//! A fully specified run: parameters, initial data, integration settings
//! and diagnostic settings. Dispatches to the zero-temperature flow at
//! `T = 0` and to the thermal flow otherwise.

use libm::sqrt;

use crate::analysis::{
    levy_flights, lyapunov_max, poincare_section, FlightConfig, FlightStats, LyapunovConfig,
    LyapunovEstimate, PoincareSection, SectionDef,
};
use crate::integrate::{integrate, IntegrationSpec, Trajectory, VectorField};
use crate::model::{
    Layout, SystemParams, ThermalField, ThermalState, ZeroTField, ZeroTState,
};
use crate::thermal::TemperatureSpec;
use crate::{Error, Result};

/// `sz(0) = -sqrt(3)/2`.
pub const DEFAULT_SZ: f64 = -0.866_025_403_784_438_6;

/// Initial data. Unset `sx` is chosen positive so that `|s| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialConditions {
    pub x: f64,
    pub p: f64,
    pub p_tilde: f64,
    pub sx: Option<f64>,
    pub sy: f64,
    pub sz: f64,
    pub ax: f64,
    pub ay: f64,
    pub atx: f64,
    pub aty: f64,
}

impl Default for InitialConditions {
    fn default() -> Self {
        InitialConditions {
            x: 0.0,
            p: 0.0,
            p_tilde: 0.0,
            sx: None,
            sy: 0.0,
            sz: DEFAULT_SZ,
            ax: 1.0,
            ay: 0.0,
            atx: 0.0,
            aty: 0.0,
        }
    }
}

impl InitialConditions {
    pub fn spin(&self) -> Result<[f64; 3]> {
        let sx = match self.sx {
            Some(sx) => sx,
            None => {
                let r = 1.0 - self.sy * self.sy - self.sz * self.sz;
                if r < -1e-12 {
                    return Err(Error::InvalidParameter {
                        name: "sz",
                        reason: "sy^2 + sz^2 exceeds 1",
                    });
                }
                sqrt(r.max(0.0))
            }
        };
        Ok([sx, self.sy, self.sz])
    }

    pub fn zero_t(&self) -> Result<ZeroTState> {
        ZeroTState::new(self.x, self.p, self.spin()?, [self.ax, self.ay])
    }

    pub fn thermal(&self) -> Result<ThermalState> {
        ThermalState::new(
            self.x,
            self.p,
            self.p_tilde,
            self.spin()?,
            [self.ax, self.ay],
            [self.atx, self.aty],
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionSettings {
    pub def: SectionDef,
    pub n_points: usize,
    pub t_max: f64,
}

impl Default for SectionSettings {
    fn default() -> Self {
        SectionSettings {
            def: SectionDef::default(),
            n_points: 1000,
            t_max: 5000.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Experiment {
    pub params: SystemParams,
    pub initial: InitialConditions,
    pub integration: IntegrationSpec,
    /// Time discarded by every diagnostic before it accumulates statistics.
    pub transient: f64,
    pub seed: u64,
    pub section: SectionSettings,
    pub lyapunov: LyapunovConfig,
    pub flights: FlightConfig,
}

impl Default for Experiment {
    fn default() -> Self {
        Experiment {
            params: SystemParams::default(),
            initial: InitialConditions::default(),
            integration: IntegrationSpec::default(),
            transient: 100.0,
            seed: 0,
            section: SectionSettings::default(),
            lyapunov: LyapunovConfig::default(),
            flights: FlightConfig::default(),
        }
    }
}

/// Trajectory of either flow.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTrajectory {
    ZeroT(Trajectory<7>),
    Thermal(Trajectory<10>),
}

impl AnyTrajectory {
    pub fn layout(&self) -> Layout {
        match self {
            AnyTrajectory::ZeroT(t) => t.layout,
            AnyTrajectory::Thermal(t) => t.layout,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyTrajectory::ZeroT(t) => t.len(),
            AnyTrajectory::Thermal(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

enum Flow {
    ZeroT(ZeroTField, [f64; 7]),
    Thermal(ThermalField, [f64; 10]),
}

impl Experiment {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.integration.validate()?;
        self.lyapunov.validate()?;
        if !(self.transient >= 0.0 && self.transient.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "transient",
                reason: "must be non-negative and finite",
            });
        }
        match self.params.temperature {
            TemperatureSpec::Zero => self.initial.zero_t().map(|_| ()),
            TemperatureSpec::InverseTemperature(_) => self.initial.thermal().map(|_| ()),
        }
    }

    fn flow(&self) -> Result<Flow> {
        self.params.validate()?;
        Ok(match self.params.temperature {
            TemperatureSpec::Zero => Flow::ZeroT(
                ZeroTField::new(&self.params),
                self.initial.zero_t()?.to_array(),
            ),
            TemperatureSpec::InverseTemperature(_) => Flow::Thermal(
                ThermalField::new(&self.params)?,
                self.initial.thermal()?.to_array(),
            ),
        })
    }

    pub fn layout(&self) -> Layout {
        if self.params.temperature.is_zero() {
            Layout::ZeroT
        } else {
            Layout::Thermal
        }
    }

    /// Sampled trajectory from `tau = 0` to `integration.t_end`.
    pub fn simulate(&self) -> Result<AnyTrajectory> {
        fn run<F: VectorField<N>, const N: usize>(
            e: &Experiment,
            f: &F,
            y0: [f64; N],
            layout: Layout,
        ) -> Result<Trajectory<N>> {
            let mut t = integrate(f, y0, &e.integration, layout)?;
            t.params = Some(e.params);
            Ok(t)
        }
        Ok(match self.flow()? {
            Flow::ZeroT(f, y0) => AnyTrajectory::ZeroT(run(self, &f, y0, Layout::ZeroT)?),
            Flow::Thermal(f, y0) => AnyTrajectory::Thermal(run(self, &f, y0, Layout::Thermal)?),
        })
    }

    pub fn poincare(&self) -> Result<PoincareSection> {
        let s = &self.section;
        match self.flow()? {
            Flow::ZeroT(f, y0) => poincare_section(
                &f, y0, Layout::ZeroT, &s.def, s.n_points, s.t_max, self.transient, &self.integration,
            ),
            Flow::Thermal(f, y0) => poincare_section(
                &f, y0, Layout::Thermal, &s.def, s.n_points, s.t_max, self.transient, &self.integration,
            ),
        }
    }

    /// Largest Lyapunov exponent; `seed` and `transient` come from the experiment.
    pub fn lyapunov(&self) -> Result<LyapunovEstimate> {
        let cfg = LyapunovConfig {
            seed: self.seed,
            transient: self.transient,
            ..self.lyapunov
        };
        match self.flow()? {
            Flow::ZeroT(f, y0) => lyapunov_max(&f, y0, &cfg, &self.integration),
            Flow::Thermal(f, y0) => lyapunov_max(&f, y0, &cfg, &self.integration),
        }
    }

    /// Flights over `[transient, t_end]`.
    pub fn flights(&self) -> Result<FlightStats> {
        let c = &self.flights;
        match self.simulate()? {
            AnyTrajectory::ZeroT(t) => {
                levy_flights(&t.after(self.transient), c.min_length, c.p_threshold)
            }
            AnyTrajectory::Thermal(t) => {
                levy_flights(&t.after(self.transient), c.min_length, c.p_threshold)
            }
        }
    }
}
