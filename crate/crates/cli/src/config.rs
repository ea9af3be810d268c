//! JSON experiment configuration.
//!
//! Every block is optional on input and fully materialized on output, so the
//! echo of a parsed config reproduces the run exactly. Unknown keys are
//! rejected at every level.

use std::fmt;
use std::path::Path;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thermocav_core::analysis::{
    Axis, Diagnostic, Direction, FlightConfig, LyapunovConfig, SectionDef, SectionFunction,
    SweepAxis, SweepGrid, SweepParam,
};
use thermocav_core::experiment::{SectionSettings, DEFAULT_SZ};
use thermocav_core::model::{Coord, DEFAULT_ALPHA};
use thermocav_core::{
    Experiment, InitialConditions, IntegrationSpec, Method, SystemParams, TemperatureSpec, Variant,
};

use crate::CliError;

/// A real number that may also be written as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Real;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Real, E> {
                Ok(Real(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Real, E> {
                Ok(Real(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Real, E> {
                match v {
                    "inf" | "infinity" | "Infinity" => Ok(Real(f64::INFINITY)),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Literal,
    #[default]
    Consistent,
}

impl From<VariantName> for Variant {
    fn from(v: VariantName) -> Self {
        match v {
            VariantName::Literal => Variant::Literal,
            VariantName::Consistent => Variant::Consistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TemperatureConfig {
    /// Inverse temperature; `"inf"` is zero temperature.
    pub beta: Real,
}

impl Default for TemperatureConfig {
    fn default() -> Self {
        TemperatureConfig { beta: Real(f64::INFINITY) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsConfig {
    pub alpha: f64,
    pub delta: f64,
    pub variant: VariantName,
    pub temperature: TemperatureConfig,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig {
            alpha: DEFAULT_ALPHA,
            delta: 0.0,
            variant: VariantName::Consistent,
            temperature: TemperatureConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitialConfig {
    pub x: f64,
    pub p: f64,
    pub p_tilde: f64,
    /// `null` picks the positive value that puts the spin on the unit sphere.
    pub sx: Option<f64>,
    pub sy: f64,
    pub sz: f64,
    pub ax: f64,
    pub ay: f64,
    pub atx: f64,
    pub aty: f64,
}

impl Default for InitialConfig {
    fn default() -> Self {
        InitialConfig {
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

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum MethodName {
    #[default]
    #[serde(rename = "rk4")]
    Rk4,
    #[serde(rename = "dopri45")]
    Dopri45,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegrationConfig {
    pub method: MethodName,
    pub step: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub t_end: f64,
    pub sample_every: f64,
}

impl Default for IntegrationConfig {
    fn default() -> Self {
        let s = IntegrationSpec::default();
        IntegrationConfig {
            method: MethodName::Rk4,
            step: s.step,
            rel_tol: s.rel_tol,
            abs_tol: s.abs_tol,
            t_end: s.t_end,
            sample_every: s.sample_every,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordName {
    X,
    P,
    PTilde,
    Sx,
    Sy,
    Sz,
    Ax,
    Ay,
    Atx,
    Aty,
}

/// A coordinate by name or by raw component index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordConfig {
    Name(CoordName),
    Index(usize),
}

impl From<CoordConfig> for Coord {
    fn from(c: CoordConfig) -> Self {
        match c {
            CoordConfig::Index(i) => Coord::Index(i),
            CoordConfig::Name(n) => match n {
                CoordName::X => Coord::X,
                CoordName::P => Coord::P,
                CoordName::PTilde => Coord::PTilde,
                CoordName::Sx => Coord::Sx,
                CoordName::Sy => Coord::Sy,
                CoordName::Sz => Coord::Sz,
                CoordName::Ax => Coord::Ax,
                CoordName::Ay => Coord::Ay,
                CoordName::Atx => Coord::Atx,
                CoordName::Aty => Coord::Aty,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionName {
    Up,
    Down,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SectionFunctionConfig {
    #[default]
    AyZeroUp,
    CosXZeroUp,
    Custom {
        coord: CoordConfig,
        level: f64,
        direction: DirectionName,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub coord: CoordConfig,
    /// Reduce into `[0, 2 pi)`.
    #[serde(default)]
    pub wrapped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SectionConfig {
    pub function: SectionFunctionConfig,
    pub project: [AxisConfig; 2],
    pub n_points: usize,
    pub t_max: f64,
}

impl Default for SectionConfig {
    fn default() -> Self {
        let s = SectionSettings::default();
        SectionConfig {
            function: SectionFunctionConfig::AyZeroUp,
            project: [
                AxisConfig { coord: CoordConfig::Name(CoordName::X), wrapped: true },
                AxisConfig { coord: CoordConfig::Name(CoordName::P), wrapped: false },
            ],
            n_points: s.n_points,
            t_max: s.t_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LyapunovBlock {
    pub d0: f64,
    pub renorm_interval: f64,
    pub n_renorm: usize,
}

impl Default for LyapunovBlock {
    fn default() -> Self {
        let l = LyapunovConfig::default();
        LyapunovBlock {
            d0: l.d0,
            renorm_interval: l.renorm_interval,
            n_renorm: l.n_renorm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FlightsBlock {
    pub min_length: f64,
    pub p_threshold: f64,
}

impl Default for FlightsBlock {
    fn default() -> Self {
        let f = FlightConfig::default();
        FlightsBlock {
            min_length: f.min_length,
            p_threshold: f.p_threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamName {
    Delta,
    Beta,
    P0,
}

impl From<ParamName> for SweepParam {
    fn from(p: ParamName) -> Self {
        match p {
            ParamName::Delta => SweepParam::Delta,
            ParamName::Beta => SweepParam::Beta,
            ParamName::P0 => SweepParam::P0,
        }
    }
}

/// Either explicit `values` or an inclusive `linspace: [start, end, n]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxisConfig {
    pub param: ParamName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Real>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub linspace: Option<(f64, f64, usize)>,
}

impl SweepAxisConfig {
    pub fn values(param: ParamName, values: &[f64]) -> Self {
        SweepAxisConfig {
            param,
            values: Some(values.iter().map(|&v| Real(v)).collect()),
            linspace: None,
        }
    }

    pub fn linspace(param: ParamName, start: f64, end: f64, n: usize) -> Self {
        SweepAxisConfig { param, values: None, linspace: Some((start, end, n)) }
    }

    fn to_axis(&self) -> Result<SweepAxis, CliError> {
        let param = self.param.into();
        match (&self.values, self.linspace) {
            (Some(v), None) => Ok(SweepAxis::new(param, v.iter().map(|r| r.0).collect())),
            (None, Some((a, b, n))) => Ok(SweepAxis::linspace(param, a, b, n)),
            _ => Err(CliError::Config(
                "sweep.axes: each axis needs exactly one of `values` or `linspace`".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticName {
    #[default]
    Lyapunov,
    FlightCount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub diagnostic: DiagnosticName,
    /// Largest number of grid cells a single sweep may evaluate.
    pub budget: usize,
    pub axes: Vec<SweepAxisConfig>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            diagnostic: DiagnosticName::Lyapunov,
            budget: 400,
            axes: vec![SweepAxisConfig::linspace(ParamName::Delta, 0.0, 3.0, 10)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub params: ParamsConfig,
    pub initial: InitialConfig,
    pub integration: IntegrationConfig,
    /// Time discarded by every diagnostic.
    pub transient: f64,
    pub seed: u64,
    pub section: SectionConfig,
    pub lyapunov: LyapunovBlock,
    pub flights: FlightsBlock,
    pub sweep: SweepConfig,
    pub output_path: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            params: ParamsConfig::default(),
            initial: InitialConfig::default(),
            integration: IntegrationConfig::default(),
            transient: 100.0,
            seed: 0,
            section: SectionConfig::default(),
            lyapunov: LyapunovBlock::default(),
            flights: FlightsBlock::default(),
            sweep: SweepConfig::default(),
            output_path: "out".into(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        // serde_json's message already carries the line and column
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Single-line JSON echo with every default filled in.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn echo_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn temperature(&self) -> TemperatureSpec {
        let b = self.params.temperature.beta.0;
        if b == f64::INFINITY {
            TemperatureSpec::Zero
        } else {
            TemperatureSpec::InverseTemperature(b)
        }
    }

    /// Builds and validates the core experiment.
    pub fn experiment(&self) -> Result<Experiment, CliError> {
        let p = &self.params;
        let i = &self.initial;
        let n = &self.integration;
        let s = &self.section;
        let e = Experiment {
            params: SystemParams {
                alpha: p.alpha,
                delta: p.delta,
                temperature: self.temperature(),
                variant: p.variant.into(),
            },
            initial: InitialConditions {
                x: i.x,
                p: i.p,
                p_tilde: i.p_tilde,
                sx: i.sx,
                sy: i.sy,
                sz: i.sz,
                ax: i.ax,
                ay: i.ay,
                atx: i.atx,
                aty: i.aty,
            },
            integration: IntegrationSpec {
                method: match n.method {
                    MethodName::Rk4 => Method::FixedRK4,
                    MethodName::Dopri45 => Method::AdaptiveEmbedded45,
                },
                step: n.step,
                rel_tol: n.rel_tol,
                abs_tol: n.abs_tol,
                t_end: n.t_end,
                sample_every: n.sample_every,
            },
            transient: self.transient,
            seed: self.seed,
            section: SectionSettings {
                def: SectionDef {
                    function: match s.function {
                        SectionFunctionConfig::AyZeroUp => SectionFunction::AyZeroUp,
                        SectionFunctionConfig::CosXZeroUp => SectionFunction::CosXZeroUp,
                        SectionFunctionConfig::Custom { coord, level, direction } => {
                            SectionFunction::Custom {
                                coord: coord.into(),
                                level,
                                direction: match direction {
                                    DirectionName::Up => Direction::Up,
                                    DirectionName::Down => Direction::Down,
                                    DirectionName::Both => Direction::Both,
                                },
                            }
                        }
                    },
                    project: (axis(&s.project[0]), axis(&s.project[1])),
                },
                n_points: s.n_points,
                t_max: s.t_max,
            },
            lyapunov: LyapunovConfig {
                d0: self.lyapunov.d0,
                renorm_interval: self.lyapunov.renorm_interval,
                n_renorm: self.lyapunov.n_renorm,
                seed: self.seed,
                transient: self.transient,
            },
            flights: FlightConfig {
                min_length: self.flights.min_length,
                p_threshold: self.flights.p_threshold,
            },
        };
        e.validate().map_err(|err| CliError::Config(err.to_string()))?;
        if s.n_points == 0 {
            return Err(CliError::Config("section.n_points: must be at least 1".into()));
        }
        if !(s.t_max > 0.0) {
            return Err(CliError::Config("section.t_max: must be positive".into()));
        }
        if !(self.flights.min_length >= 0.0 && self.flights.p_threshold >= 0.0) {
            return Err(CliError::Config("flights: thresholds must be non-negative".into()));
        }
        Ok(e)
    }

    pub fn grid(&self) -> Result<(SweepGrid, Diagnostic), CliError> {
        let axes = self
            .sweep
            .axes
            .iter()
            .map(SweepAxisConfig::to_axis)
            .collect::<Result<Vec<_>, _>>()?;
        let diagnostic = match self.sweep.diagnostic {
            DiagnosticName::Lyapunov => Diagnostic::Lyapunov,
            DiagnosticName::FlightCount => Diagnostic::FlightCount,
        };
        Ok((SweepGrid::new(axes), diagnostic))
    }
}

fn axis(a: &AxisConfig) -> Axis {
    if a.wrapped {
        Axis::Wrapped(a.coord.into())
    } else {
        Axis::Raw(a.coord.into())
    }
}
