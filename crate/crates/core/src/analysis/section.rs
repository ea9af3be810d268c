//! Poincaré surfaces of section.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::integrate::{refine_in_step, IntegrationSpec, Stepper, VectorField};
use crate::model::{Coord, Layout};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    #[default]
    Up,
    Down,
    Both,
}

impl Direction {
    fn accepts(&self, g0: f64, g1: f64) -> bool {
        let up = g0 < 0.0 && g1 >= 0.0;
        let down = g0 > 0.0 && g1 <= 0.0;
        match self {
            Direction::Up => up,
            Direction::Down => down,
            Direction::Both => up || down,
        }
    }
}

/// The section condition `g(state) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SectionFunction {
    /// `g = ay`, crossed upward.
    #[default]
    AyZeroUp,
    /// `g = cos x`, crossed upward.
    CosXZeroUp,
    /// `g = coord - level`.
    Custom {
        coord: Coord,
        level: f64,
        direction: Direction,
    },
}

/// A projection axis. `Wrapped` reduces the coordinate into `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Wrapped(Coord),
    Raw(Coord),
}

impl Axis {
    fn coord(&self) -> Coord {
        match *self {
            Axis::Wrapped(c) | Axis::Raw(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionDef {
    pub function: SectionFunction,
    pub project: (Axis, Axis),
}

impl Default for SectionDef {
    fn default() -> Self {
        SectionDef {
            function: SectionFunction::AyZeroUp,
            project: (Axis::Wrapped(Coord::X), Axis::Raw(Coord::P)),
        }
    }
}

/// Reduces an angle into `[0, 2 pi)`.
pub fn wrap_angle(v: f64) -> f64 {
    let r = libm::fmod(v, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU { 0.0 } else { r }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Linear { index: usize, level: f64 },
    CosX { index: usize },
}

#[derive(Debug, Clone, Copy)]
struct Resolved {
    kind: Kind,
    direction: Direction,
    u: (usize, bool),
    v: (usize, bool),
}

impl Resolved {
    fn g(&self, y: &[f64]) -> f64 {
        match self.kind {
            Kind::Linear { index, level } => y[index] - level,
            Kind::CosX { index } => libm::cos(y[index]),
        }
    }

    fn project(&self, y: &[f64]) -> (f64, f64) {
        let pick = |(i, wrap): (usize, bool)| {
            if wrap {
                wrap_angle(y[i])
            } else {
                y[i]
            }
        };
        (pick(self.u), pick(self.v))
    }
}

impl SectionDef {
    fn resolve(&self, layout: Layout) -> Result<Resolved> {
        let find = |c: Coord| layout.index(c).ok_or(Error::MissingComponent(c.name()));
        let (kind, direction) = match self.function {
            SectionFunction::AyZeroUp => (
                Kind::Linear {
                    index: find(Coord::Ay)?,
                    level: 0.0,
                },
                Direction::Up,
            ),
            SectionFunction::CosXZeroUp => (
                Kind::CosX {
                    index: find(Coord::X)?,
                },
                Direction::Up,
            ),
            SectionFunction::Custom {
                coord,
                level,
                direction,
            } => (
                Kind::Linear {
                    index: find(coord)?,
                    level,
                },
                direction,
            ),
        };
        let axis = |a: Axis| Ok((find(a.coord())?, matches!(a, Axis::Wrapped(_))));
        Ok(Resolved {
            kind,
            direction,
            u: axis(self.project.0)?,
            v: axis(self.project.1)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoincareSection {
    pub points: Vec<(f64, f64)>,
    /// Crossing time of each point.
    pub taus: Vec<f64>,
    pub section: SectionDef,
    pub count: usize,
    /// Set when the run ended without a single crossing.
    pub no_crossings: bool,
}

/// Collects refined crossings of `section` along the orbit of `y0`.
///
/// Integrates whole steps until `n_points` crossings have been found or the
/// step containing `t_max` has been completed. Crossings before `transient`
/// are discarded.
#[allow(clippy::too_many_arguments)]
pub fn poincare_section<F: VectorField<N>, const N: usize>(
    field: &F,
    y0: [f64; N],
    layout: Layout,
    section: &SectionDef,
    n_points: usize,
    t_max: f64,
    transient: f64,
    spec: &IntegrationSpec,
) -> Result<PoincareSection> {
    if n_points == 0 {
        return Err(Error::InvalidParameter {
            name: "n_points",
            reason: "must be at least 1",
        });
    }
    let r = section.resolve(layout)?;
    let mut stepper = Stepper::new(field, 0.0, y0, spec)?;
    let mut points = Vec::new();
    let mut taus = Vec::new();
    let g = |y: &[f64; N]| r.g(y);
    while points.len() < n_points && stepper.t() < t_max {
        let step = stepper.step(f64::INFINITY)?;
        if step.t1 < transient {
            continue;
        }
        if !r.direction.accepts(g(&step.y0), g(&step.y1)) {
            continue;
        }
        let c = refine_in_step(&step, g)?;
        if c.tau < transient {
            continue;
        }
        points.push(r.project(&c.state));
        taus.push(c.tau);
    }
    Ok(PoincareSection {
        count: points.len(),
        no_crossings: points.is_empty(),
        points,
        taus,
        section: *section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    // rotation of (ax, ay) at unit rate in the zero-temperature layout
    fn rotation(y: &[f64; 7]) -> [f64; 7] {
        let mut d = [0.0; 7];
        d[5] = -y[6];
        d[6] = y[5];
        d
    }

    fn start() -> [f64; 7] {
        [0.5, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0]
    }

    #[test]
    fn rotation_crosses_once_per_period() {
        let spec = IntegrationSpec::default();
        let def = SectionDef {
            project: (Axis::Raw(Coord::Ax), Axis::Raw(Coord::Ay)),
            ..Default::default()
        };
        let s = poincare_section(&rotation, start(), Layout::ZeroT, &def, 1000, 20.0 * PI, 0.0, &spec).unwrap();
        assert_eq!(s.count, 10);
        for (k, (&t, &(u, v))) in s.taus.iter().zip(&s.points).enumerate() {
            assert!((t - 2.0 * PI * (k + 1) as f64).abs() < 1e-8);
            assert!(v.abs() < 1e-8);
            assert!((u - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn stops_at_requested_count() {
        let spec = IntegrationSpec::default();
        let s = poincare_section(&rotation, start(), Layout::ZeroT, &SectionDef::default(), 3, 1e6, 0.0, &spec).unwrap();
        assert_eq!(s.count, 3);
        assert_eq!(s.points.len(), 3);
        // default projection is (x mod 2 pi, p)
        assert_eq!(s.points[0], (0.5, 1.0));
    }

    #[test]
    fn transient_discards_early_crossings() {
        let spec = IntegrationSpec::default();
        let s = poincare_section(&rotation, start(), Layout::ZeroT, &SectionDef::default(), 100, 20.0 * PI, 10.0, &spec).unwrap();
        assert_eq!(s.count, 9);
        assert!(s.taus[0] > 10.0);
    }

    #[test]
    fn never_crossing_is_flagged() {
        let drift = |_: &[f64; 7]| [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
        let y0 = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.5];
        let spec = IntegrationSpec::fixed(1e-2, 1.0, 0.1);
        let s = poincare_section(&drift, y0, Layout::ZeroT, &SectionDef::default(), 10, 10.0, 0.0, &spec).unwrap();
        assert_eq!(s.count, 0);
        assert!(s.no_crossings);
    }

    #[test]
    fn down_and_both_directions() {
        let spec = IntegrationSpec::default();
        let mut def = SectionDef {
            function: SectionFunction::Custom { coord: Coord::Ay, level: 0.0, direction: Direction::Down },
            ..Default::default()
        };
        let s = poincare_section(&rotation, start(), Layout::ZeroT, &def, 100, 4.0 * PI + 0.1, 0.0, &spec).unwrap();
        assert_eq!(s.count, 2);
        assert!((s.taus[0] - PI).abs() < 1e-8);
        def.function = SectionFunction::Custom { coord: Coord::Ay, level: 0.0, direction: Direction::Both };
        let s = poincare_section(&rotation, start(), Layout::ZeroT, &def, 100, 4.0 * PI + 0.1, 0.0, &spec).unwrap();
        assert_eq!(s.count, 4);
    }

    #[test]
    fn cos_x_section() {
        // uniform drift in x
        let drift = |_: &[f64; 7]| [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let y0 = [0.0, 2.0, 0.0, 0.0, 1.0, 1.0, 0.0];
        let spec = IntegrationSpec::fixed(1e-2, 1.0, 0.1);
        let def = SectionDef { function: SectionFunction::CosXZeroUp, ..Default::default() };
        let s = poincare_section(&drift, y0, Layout::ZeroT, &def, 2, 100.0, 0.0, &spec).unwrap();
        // cos x rises through zero at x = 3 pi / 2
        assert!((s.taus[0] - 1.5 * PI).abs() < 1e-9);
        assert!((s.points[1].0 - 1.5 * PI).abs() < 1e-9);
    }

    #[test]
    fn missing_component_rejected() {
        let spec = IntegrationSpec::default();
        let def = SectionDef {
            function: SectionFunction::Custom { coord: Coord::Atx, level: 0.0, direction: Direction::Up },
            ..Default::default()
        };
        let r = poincare_section(&rotation, start(), Layout::ZeroT, &def, 1, 1.0, 0.0, &spec);
        assert_eq!(r, Err(Error::MissingComponent("atx")));
    }
}
