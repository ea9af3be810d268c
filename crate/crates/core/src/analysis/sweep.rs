//! Parameter grids over detuning, inverse temperature and initial momentum.
//!
//! Cells are independent. This module enumerates them and evaluates one cell
//! at a time; parallel execution lives with the caller, which must merge
//! results by [`SweepCell::index`].

use alloc::vec::Vec;

use crate::experiment::Experiment;
use crate::thermal::TemperatureSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Delta,
    /// `f64::INFINITY` stands for zero temperature.
    Beta,
    P0,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::Delta => "delta",
            SweepParam::Beta => "beta",
            SweepParam::P0 => "p0",
        }
    }

    fn apply(&self, e: &mut Experiment, value: f64) -> Result<()> {
        match self {
            SweepParam::Delta => e.params.delta = value,
            SweepParam::Beta if value == f64::INFINITY => e.params.temperature = TemperatureSpec::Zero,
            SweepParam::Beta => e.params.temperature = TemperatureSpec::beta(value)?,
            SweepParam::P0 => e.initial.p = value,
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

impl SweepAxis {
    pub fn new(param: SweepParam, values: Vec<f64>) -> Self {
        SweepAxis { param, values }
    }

    /// `n` evenly spaced values from `start` to `end` inclusive.
    pub fn linspace(param: SweepParam, start: f64, end: f64, n: usize) -> Self {
        let values = match n {
            0 => Vec::new(),
            1 => alloc::vec![start],
            _ => (0..n)
                .map(|k| start + (end - start) * k as f64 / (n - 1) as f64)
                .collect(),
        };
        SweepAxis { param, values }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Diagnostic {
    Lyapunov,
    FlightCount,
}

impl Diagnostic {
    pub fn name(&self) -> &'static str {
        match self {
            Diagnostic::Lyapunov => "lyapunov",
            Diagnostic::FlightCount => "flight_count",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub axes: Vec<SweepAxis>,
}

/// One grid point. `coords[i]` is the value on `axes[i]`; `index` is the
/// row-major position with the last axis varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub index: usize,
    pub coords: Vec<f64>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CellStatus {
    Ok,
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub index: usize,
    pub coords: Vec<f64>,
    pub seed: u64,
    pub value: f64,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<SweepAxis>,
    pub diagnostic: Diagnostic,
    /// In cell-index order.
    pub cells: Vec<CellResult>,
}

impl SweepGrid {
    pub fn new(axes: Vec<SweepAxis>) -> Self {
        SweepGrid { axes }
    }

    pub fn n_cells(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    /// Enumerates the grid, rejecting empty axes and grids over `budget`.
    pub fn cells(&self, base: &Experiment, budget: usize) -> Result<Vec<SweepCell>> {
        if self.axes.is_empty() || self.axes.iter().any(|a| a.values.is_empty()) {
            return Err(Error::InvalidParameter {
                name: "sweep.axes",
                reason: "every axis needs at least one value",
            });
        }
        let n = self.n_cells();
        if n > budget {
            return Err(Error::InvalidParameter {
                name: "sweep.budget",
                reason: "grid exceeds the cell budget",
            });
        }
        let mut out = Vec::with_capacity(n);
        for index in 0..n {
            let mut rem = index;
            let mut coords = alloc::vec![0.0; self.axes.len()];
            for (k, axis) in self.axes.iter().enumerate().rev() {
                let len = axis.values.len();
                coords[k] = axis.values[rem % len];
                rem /= len;
            }
            let mut experiment = *base;
            for (axis, &v) in self.axes.iter().zip(&coords) {
                axis.param.apply(&mut experiment, v)?;
            }
            out.push(SweepCell {
                index,
                coords,
                experiment,
            });
        }
        Ok(out)
    }
}

/// Evaluates one cell. Failures are captured in the result.
pub fn evaluate_cell(cell: &SweepCell, diagnostic: Diagnostic) -> CellResult {
    let value = match diagnostic {
        Diagnostic::Lyapunov => cell.experiment.lyapunov().map(|l| l.lambda_max),
        Diagnostic::FlightCount => cell.experiment.flights().map(|f| f.count as f64),
    };
    let (value, status) = match value {
        Ok(v) => (v, CellStatus::Ok),
        Err(e) => (f64::NAN, CellStatus::Failed(e)),
    };
    CellResult {
        index: cell.index,
        coords: cell.coords.clone(),
        seed: cell.experiment.seed,
        value,
        status,
    }
}

/// Sequential sweep.
pub fn sweep(
    grid: &SweepGrid,
    base: &Experiment,
    diagnostic: Diagnostic,
    budget: usize,
) -> Result<SweepResult> {
    let cells = grid
        .cells(base, budget)?
        .iter()
        .map(|c| evaluate_cell(c, diagnostic))
        .collect();
    Ok(SweepResult {
        axes: grid.axes.clone(),
        diagnostic,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn row_major_enumeration() {
        let grid = SweepGrid::new(vec![
            SweepAxis::new(SweepParam::Delta, vec![0.0, 1.0]),
            SweepAxis::new(SweepParam::Beta, vec![f64::INFINITY, 2.0, 5.0]),
        ]);
        let cells = grid.cells(&Experiment::default(), 100).unwrap();
        assert_eq!(cells.len(), 6);
        assert_eq!(cells[1].coords, vec![0.0, 2.0]);
        assert_eq!(cells[3].coords, vec![1.0, f64::INFINITY]);
        assert!(cells[3].experiment.params.temperature.is_zero());
        assert_eq!(cells[5].experiment.params.temperature, TemperatureSpec::InverseTemperature(5.0));
        assert_eq!(cells[5].experiment.params.delta, 1.0);
    }

    #[test]
    fn budget_and_empty_axes() {
        let grid = SweepGrid::new(vec![SweepAxis::linspace(SweepParam::P0, 0.0, 10.0, 11)]);
        assert!(grid.cells(&Experiment::default(), 10).is_err());
        assert_eq!(grid.cells(&Experiment::default(), 11).unwrap()[10].experiment.initial.p, 10.0);
        let grid = SweepGrid::new(vec![SweepAxis::new(SweepParam::P0, vec![])]);
        assert!(grid.cells(&Experiment::default(), 10).is_err());
    }

    #[test]
    fn bad_beta_rejected() {
        let grid = SweepGrid::new(vec![SweepAxis::new(SweepParam::Beta, vec![-1.0])]);
        assert!(grid.cells(&Experiment::default(), 10).is_err());
    }

    #[test]
    fn failures_stay_in_cell() {
        let mut base = Experiment::default();
        base.lyapunov.n_renorm = 10; // below the minimum
        let grid = SweepGrid::new(vec![SweepAxis::new(SweepParam::Delta, vec![0.0, 1.0])]);
        let r = sweep(&grid, &base, Diagnostic::Lyapunov, 10).unwrap();
        assert_eq!(r.cells.len(), 2);
        assert!(r.cells.iter().all(|c| matches!(c.status, CellStatus::Failed(_)) && c.value.is_nan()));
    }
}
