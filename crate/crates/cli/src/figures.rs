//! Canned recipes for the six published figures. Each recipe is a list of
//! panels, each panel a complete config plus the output it produces.

use thermocav_core::experiment::DEFAULT_SZ;

use crate::config::{ExperimentConfig, ParamName, Real, SweepAxisConfig};

/// Initial momentum for the section and flight figures. Just below the
/// trapping threshold of the default field amplitude.
pub const SECTION_P0: f64 = 24.0;
/// Initial momentum for the Lyapunov figures.
pub const LYAPUNOV_P0: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PanelKind {
    Section,
    /// Trajectory plus the flights found on it.
    Flights,
    Sweep,
}

#[derive(Debug, Clone)]
pub struct Panel {
    /// File stem, e.g. `fig2_t0`.
    pub name: String,
    pub kind: PanelKind,
    pub config: ExperimentConfig,
}

fn beta_label(beta: f64) -> String {
    if beta == f64::INFINITY {
        "t0".into()
    } else {
        format!("beta{beta}")
    }
}

fn with_beta(base: &ExperimentConfig, beta: f64) -> ExperimentConfig {
    let mut c = base.clone();
    c.params.temperature.beta = Real(beta);
    c
}

fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

pub fn panels(figure: u8, base: &ExperimentConfig) -> Vec<Panel> {
    let section = |delta: f64, sz: f64, betas: &[f64], fig: u8| -> Vec<Panel> {
        betas
            .iter()
            .map(|&b| {
                let mut c = with_beta(base, b);
                c.params.delta = delta;
                c.initial.x = 0.0;
                c.initial.p = SECTION_P0;
                c.initial.sx = None;
                c.initial.sz = sz;
                Panel { name: format!("fig{fig}_{}", beta_label(b)), kind: PanelKind::Section, config: c }
            })
            .collect()
    };
    let lyapunov_base = |c: &mut ExperimentConfig| {
        c.initial.x = 0.0;
        c.initial.p = LYAPUNOV_P0;
        c.initial.sx = None;
        c.initial.sz = 0.0;
        c.sweep.diagnostic = crate::config::DiagnosticName::Lyapunov;
    };
    let delta_axis = SweepAxisConfig::linspace(ParamName::Delta, 0.0, 3.0, 10);
    match figure {
        1 => section(1.92, -0.863, &[2.0, 6.0, 10.0, 12.0], 1),
        2 => section(1.92, DEFAULT_SZ, &[f64::INFINITY, 20.0], 2),
        3 => [f64::INFINITY, 100.0, 50.0, 5.0]
            .iter()
            .map(|&b| {
                let mut c = with_beta(base, b);
                c.params.delta = 1.2;
                c.initial.x = 0.0;
                c.initial.p = SECTION_P0;
                c.initial.sx = None;
                c.initial.sz = DEFAULT_SZ;
                c.integration.t_end = 2000.0;
                Panel { name: format!("fig3_{}", beta_label(b)), kind: PanelKind::Flights, config: c }
            })
            .collect(),
        4 => {
            let mut c = base.clone();
            lyapunov_base(&mut c);
            c.sweep.axes = vec![
                SweepAxisConfig::values(ParamName::Beta, &[25.0, 1.0, 0.1, 0.01]),
                delta_axis,
            ];
            vec![Panel { name: "fig4".into(), kind: PanelKind::Sweep, config: c }]
        }
        5 => [f64::INFINITY, 0.5]
            .iter()
            .map(|&b| {
                let mut c = with_beta(base, b);
                lyapunov_base(&mut c);
                c.sweep.axes = vec![
                    delta_axis.clone(),
                    SweepAxisConfig::linspace(ParamName::P0, 0.0, 50.0, 10),
                ];
                Panel { name: format!("fig5_{}", beta_label(b)), kind: PanelKind::Sweep, config: c }
            })
            .collect(),
        6 => {
            let mut c = base.clone();
            lyapunov_base(&mut c);
            c.sweep.axes = vec![
                delta_axis,
                SweepAxisConfig::values(ParamName::Beta, &log_space(0.01, 25.0, 10)),
            ];
            vec![Panel { name: "fig6".into(), kind: PanelKind::Sweep, config: c }]
        }
        _ => Vec::new(),
    }
}
