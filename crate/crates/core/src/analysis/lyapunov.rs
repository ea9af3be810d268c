//! Largest Lyapunov exponent by the two-trajectory (Benettin) method.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::integrate::{IntegrationSpec, Stepper, VectorField};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LyapunovConfig {
    /// Initial and post-renormalization separation, in `[1e-10, 1e-6]`.
    pub d0: f64,
    pub renorm_interval: f64,
    /// At least 100.
    pub n_renorm: usize,
    pub seed: u64,
    /// Time integrated before the perturbation is applied.
    pub transient: f64,
}

impl Default for LyapunovConfig {
    fn default() -> Self {
        LyapunovConfig {
            d0: 1e-8,
            renorm_interval: 1.0,
            n_renorm: 2000,
            seed: 0,
            transient: 100.0,
        }
    }
}

impl LyapunovConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1e-10..=1e-6).contains(&self.d0) {
            return Err(Error::InvalidParameter {
                name: "d0",
                reason: "must lie in [1e-10, 1e-6]",
            });
        }
        if self.n_renorm < 100 {
            return Err(Error::InvalidParameter {
                name: "n_renorm",
                reason: "must be at least 100",
            });
        }
        if !(self.renorm_interval > 0.0 && self.renorm_interval.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "renorm_interval",
                reason: "must be positive and finite",
            });
        }
        if !(self.transient >= 0.0 && self.transient.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "transient",
                reason: "must be non-negative and finite",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovEstimate {
    /// Per unit `tau`, i.e. in units of `Omega_0`.
    pub lambda_max: f64,
    /// Running estimate after each renormalization.
    pub history: Vec<f64>,
    pub n_renorm: usize,
    pub d0: f64,
    pub renorm_interval: f64,
}

fn distance<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Places `other` at distance `d0` from `reference` along `other - reference`.
fn rescale<const N: usize>(reference: &[f64; N], other: &[f64; N], d: f64, d0: f64) -> [f64; N] {
    let k = d0 / d;
    core::array::from_fn(|i| reference[i] + k * (other[i] - reference[i]))
}

/// Estimates the largest Lyapunov exponent of the orbit through `y0`.
///
/// The perturbed copy starts `d0` away along a seeded random direction,
/// projected back onto the flow's constraint manifold. Every
/// `renorm_interval` the separation `d` is logged as `ln(d / d0)` and the
/// copy is pulled back to distance `d0`.
pub fn lyapunov_max<F: VectorField<N>, const N: usize>(
    field: &F,
    y0: [f64; N],
    cfg: &LyapunovConfig,
    spec: &IntegrationSpec,
) -> Result<LyapunovEstimate> {
    cfg.validate()?;
    spec.validate()?;

    let mut reference = Stepper::new(field, 0.0, y0, spec)?;
    while reference.t() < cfg.transient {
        reference.step(cfg.transient)?;
    }
    let t0 = reference.t();
    let base = *reference.y();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let dir: [f64; N] = core::array::from_fn(|_| StandardNormal.sample(&mut rng));
    let norm = libm::sqrt(dir.iter().map(|v| v * v).sum());
    let mut start: [f64; N] = core::array::from_fn(|i| base[i] + cfg.d0 * dir[i] / norm);
    field.constrain(&mut start);
    let d = distance(&base, &start);
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Renormalization { index: 0, tau: t0, separation: d });
    }
    let start = rescale(&base, &start, d, cfg.d0);

    // a fresh stepper on the same grid as the reference
    let mut reference = Stepper::new(field, t0, base, spec)?;
    let mut perturbed = Stepper::new(field, t0, start, spec)?;

    let mut sum = 0.0;
    let mut history = Vec::with_capacity(cfg.n_renorm);
    for k in 1..=cfg.n_renorm {
        let target = t0 + k as f64 * cfg.renorm_interval;
        while reference.t() < target {
            reference.step(target)?;
        }
        while perturbed.t() < target {
            perturbed.step(target)?;
        }
        let (a, b) = (reference.y(), perturbed.y());
        let d = distance(a, b);
        if !(d > f64::MIN_POSITIVE * 1e10 && d < 1e100 * cfg.d0) {
            return Err(Error::Renormalization { index: k, tau: target, separation: d });
        }
        sum += libm::log(d / cfg.d0);
        history.push(sum / (k as f64 * cfg.renorm_interval));
        perturbed.reset_state(rescale(a, b, d, cfg.d0));
    }
    Ok(LyapunovEstimate {
        lambda_max: *history.last().unwrap_or(&0.0),
        history,
        n_renorm: cfg.n_renorm,
        d0: cfg.d0,
        renorm_interval: cfg.renorm_interval,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn saddle(y: &[f64; 2]) -> [f64; 2] {
        [y[0], -y[1]]
    }

    fn rotation(y: &[f64; 2]) -> [f64; 2] {
        [-y[1], y[0]]
    }

    fn cfg(n: usize) -> LyapunovConfig {
        LyapunovConfig {
            n_renorm: n,
            transient: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn saddle_top_exponent() {
        let spec = IntegrationSpec::fixed(1e-2, 1.0, 1.0);
        let est = lyapunov_max(&saddle, [0.0, 0.0], &cfg(500), &spec).unwrap();
        assert!((est.lambda_max - 1.0).abs() < 0.02, "{}", est.lambda_max);
        assert_eq!(est.history.len(), 500);
        assert_eq!(est.lambda_max, est.history[499]);
    }

    #[test]
    fn rotation_is_neutral() {
        let spec = IntegrationSpec::fixed(1e-2, 1.0, 1.0);
        let est = lyapunov_max(&rotation, [1.0, 0.0], &cfg(200), &spec).unwrap();
        assert!(est.lambda_max.abs() < 1e-3, "{}", est.lambda_max);
    }

    #[test]
    fn seeds_are_reproducible() {
        let spec = IntegrationSpec::fixed(1e-2, 1.0, 1.0);
        let a = lyapunov_max(&saddle, [0.0, 0.0], &cfg(100), &spec).unwrap();
        let b = lyapunov_max(&saddle, [0.0, 0.0], &cfg(100), &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn contraction_underflows() {
        let sink = |y: &[f64; 1]| [-50.0 * y[0]];
        let spec = IntegrationSpec::fixed(1e-3, 1.0, 1.0);
        let c = LyapunovConfig { renorm_interval: 20.0, ..cfg(100) };
        let r = lyapunov_max(&sink, [1.0], &c, &spec);
        assert!(matches!(r, Err(Error::Renormalization { index: 1, .. })), "{r:?}");
    }

    #[test]
    fn config_bounds() {
        let spec = IntegrationSpec::default();
        let bad_d0 = LyapunovConfig { d0: 1e-3, ..cfg(100) };
        assert!(lyapunov_max(&saddle, [0.0, 0.0], &bad_d0, &spec).is_err());
        assert!(lyapunov_max(&saddle, [0.0, 0.0], &cfg(99), &spec).is_err());
    }
}
