use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid temperature: beta = {0} (must be positive and finite)")]
    InvalidTemperature(f64),
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("non-finite state component")]
    NonFiniteState,
    #[error("integration diverged after tau = {last_tau}")]
    Diverged { last_tau: f64 },
    #[error("adaptive step underflow (h = {step:e}) at tau = {tau}")]
    StepUnderflow { tau: f64, step: f64 },
    #[error("section function does not change sign across the step")]
    NoSignChange,
    #[error("crossing refinement did not converge in {iterations} iterations (|g| = {residual:e})")]
    CrossingNotConverged { iterations: u32, residual: f64 },
    #[error("separation {separation:e} out of range at renormalization {index} (tau = {tau})")]
    Renormalization {
        index: usize,
        tau: f64,
        separation: f64,
    },
    #[error("sample interval {sample_every} too coarse for flight detection (max {max})")]
    SamplingTooSparse { sample_every: f64, max: f64 },
    #[error("state layout has no `{0}` component")]
    MissingComponent(&'static str),
}
