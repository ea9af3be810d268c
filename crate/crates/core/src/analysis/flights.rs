//! Lévy flights: long ballistic excursions of the atom between episodes of
//! trapped oscillation.
//!
//! A flight is a maximal run of samples over which `p` keeps one sign with
//! `|p| > p_threshold`, and whose net displacement reaches `min_length`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::integrate::Trajectory;
use crate::model::Coord;
use crate::{Error, Result};

/// Coarsest sampling accepted for flight detection.
pub const MAX_SAMPLE_SPACING: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightConfig {
    /// Minimum net displacement in units of `1/k_f`. Default `10 pi`, five
    /// optical wavelengths.
    pub min_length: f64,
    pub p_threshold: f64,
}

impl Default for FlightConfig {
    fn default() -> Self {
        FlightConfig {
            min_length: 10.0 * PI,
            p_threshold: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flight {
    pub tau_start: f64,
    pub tau_end: f64,
    pub dx: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlightStats {
    pub flights: Vec<Flight>,
    pub count: usize,
    pub min_length: f64,
    pub p_threshold: f64,
}

pub fn levy_flights<const N: usize>(
    traj: &Trajectory<N>,
    min_length: f64,
    p_threshold: f64,
) -> Result<FlightStats> {
    if traj.spec.sample_every > MAX_SAMPLE_SPACING * (1.0 + 1e-12) {
        return Err(Error::SamplingTooSparse {
            sample_every: traj.spec.sample_every,
            max: MAX_SAMPLE_SPACING,
        });
    }
    let xi = traj.layout.index(Coord::X).ok_or(Error::MissingComponent("x"))?;
    let pi = traj.layout.index(Coord::P).ok_or(Error::MissingComponent("p"))?;

    let mut flights = Vec::new();
    // (start index, sign) of the current run
    let mut run: Option<(usize, f64)> = None;
    let close = |start: usize, end: usize, flights: &mut Vec<Flight>| {
        let dx = traj.states[end][xi] - traj.states[start][xi];
        if dx.abs() >= min_length {
            flights.push(Flight {
                tau_start: traj.times[start],
                tau_end: traj.times[end],
                dx,
            });
        }
    };
    for (i, y) in traj.states.iter().enumerate() {
        let p = y[pi];
        let sign = if p > p_threshold {
            1.0
        } else if p < -p_threshold {
            -1.0
        } else {
            0.0
        };
        match run {
            Some((_, s)) if s == sign => {}
            Some((start, _)) => {
                close(start, i - 1, &mut flights);
                run = (sign != 0.0).then_some((i, sign));
            }
            None if sign != 0.0 => run = Some((i, sign)),
            None => {}
        }
    }
    if let Some((start, _)) = run {
        close(start, traj.states.len() - 1, &mut flights);
    }
    Ok(FlightStats {
        count: flights.len(),
        flights,
        min_length,
        p_threshold,
    })
}
