//! Command-line driver for `thermocav-core`: JSON configuration, canned
//! figure recipes, a parallel sweep pool and CSV output.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thermocav_core::analysis::{CellStatus, SweepResult};
use thermocav_core::Error as CoreError;

pub mod config;
pub mod figures;
pub mod output;
pub mod pool;

use config::{ExperimentConfig, VariantName};
use figures::PanelKind;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub(crate) fn csv(path: &Path, e: csv::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    /// Classifies a core error raised while running `context`.
    fn core(context: &str, e: CoreError) -> Self {
        match e {
            CoreError::InvalidTemperature(_)
            | CoreError::InvalidParameter { .. }
            | CoreError::SamplingTooSparse { .. }
            | CoreError::MissingComponent(_) => CliError::Config(format!("{context}: {e}")),
            _ => CliError::Numerical(format!("{context}: {e}")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "thermocav", version, about = "Finite-temperature atom-cavity dynamics")]
pub struct Cli {
    /// JSON experiment config; omitted keys take their defaults.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub variant: Option<VariantName>,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    /// Output directory (overrides `output_path`).
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps; defaults to all cores.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Integrate one trajectory.
    Simulate,
    /// Poincaré surface of section.
    Poincare,
    /// Largest Lyapunov exponent with its running history.
    Lyapunov,
    /// Lévy flights along one trajectory.
    Flights,
    /// Diagnostic over a parameter grid.
    Sweep,
    /// Reproduce one of the published figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        number: u8,
    },
}

/// Config after applying command-line overrides.
pub fn resolve_config(cli: &Cli) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = cli.variant {
        cfg.params.variant = v;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.output_path = o.to_string_lossy().into_owned();
    }
    Ok(cfg)
}

fn warn_if_stiff(cfg: &ExperimentConfig) {
    if cfg.temperature().is_stiff() {
        eprintln!(
            "warning: beta = {} is below {}; the thermal amplitudes are large and the default step may be too coarse",
            cfg.params.temperature.beta.0,
            thermocav_core::thermal::STIFF_BETA
        );
    }
}

fn sweep_failures(r: &SweepResult) -> Vec<String> {
    r.cells
        .iter()
        .filter_map(|c| match &c.status {
            CellStatus::Ok => None,
            CellStatus::Failed(e) => Some(format!("cell {} {:?}: {e}", c.index, c.coords)),
        })
        .collect()
}

/// Runs one command and returns the files written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>, CliError> {
    let cfg = resolve_config(cli)?;
    let dir = PathBuf::from(&cfg.output_path);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let threads = cli.threads;
    let mut written = Vec::new();
    let mut failures = Vec::new();
    match cli.command {
        Command::Figure { number } => {
            for panel in figures::panels(number, &cfg) {
                let echo = dir.join(format!("{}.json", panel.name));
                std::fs::write(&echo, panel.config.echo_pretty() + "\n").map_err(|e| CliError::io(&echo, e))?;
                written.push(echo);
                let path = |suffix: &str| dir.join(format!("{}{suffix}.csv", panel.name));
                let label = format!("figure {number} {}", panel.name);
                match panel.kind {
                    PanelKind::Section => written.push(run_poincare(&panel.config, &path(""), &label)?),
                    PanelKind::Flights => {
                        written.extend(run_flights(&panel.config, &path("_trajectory"), &path("_flights"), &label)?)
                    }
                    PanelKind::Sweep => {
                        let (p, r) = run_sweep(&panel.config, &path(""), &label, threads)?;
                        failures.extend(sweep_failures(&r));
                        written.push(p);
                    }
                }
            }
        }
        cmd => {
            written.push(write_config_echo(&cfg, &dir)?);
            match cmd {
                Command::Simulate => written.push(run_simulate(&cfg, &dir.join("trajectory.csv"), "simulate")?),
                Command::Poincare => written.push(run_poincare(&cfg, &dir.join("section.csv"), "poincare")?),
                Command::Lyapunov => written.push(run_lyapunov(&cfg, &dir.join("lyapunov.csv"), "lyapunov")?),
                Command::Flights => written.extend(run_flights(
                    &cfg,
                    &dir.join("trajectory.csv"),
                    &dir.join("flights.csv"),
                    "flights",
                )?),
                Command::Sweep => {
                    let (p, r) = run_sweep(&cfg, &dir.join("sweep.csv"), "sweep", threads)?;
                    failures.extend(sweep_failures(&r));
                    written.push(p);
                }
                Command::Figure { .. } => unreachable!(),
            }
        }
    }
    if !failures.is_empty() {
        return Err(CliError::Numerical(format!(
            "{} sweep cell(s) failed (results written):\n  {}",
            failures.len(),
            failures.join("\n  ")
        )));
    }
    Ok(written)
}

/// Writes the fully materialized config next to the outputs; re-running it
/// reproduces them bit for bit.
pub fn write_config_echo(cfg: &ExperimentConfig, dir: &Path) -> Result<PathBuf, CliError> {
    let path = dir.join("config.json");
    std::fs::write(&path, cfg.echo_pretty() + "\n").map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn run_simulate(cfg: &ExperimentConfig, path: &Path, label: &str) -> Result<PathBuf, CliError> {
    let e = cfg.experiment()?;
    warn_if_stiff(cfg);
    let traj = e.simulate().map_err(|err| CliError::core(label, err))?;
    output::write_trajectory(path, cfg, label, &traj)
}

pub fn run_poincare(cfg: &ExperimentConfig, path: &Path, label: &str) -> Result<PathBuf, CliError> {
    let e = cfg.experiment()?;
    warn_if_stiff(cfg);
    let s = e.poincare().map_err(|err| CliError::core(label, err))?;
    if s.no_crossings {
        eprintln!("warning: {label}: the orbit never crossed the section");
    }
    output::write_section(path, cfg, label, &s)
}

pub fn run_lyapunov(cfg: &ExperimentConfig, path: &Path, label: &str) -> Result<PathBuf, CliError> {
    let e = cfg.experiment()?;
    warn_if_stiff(cfg);
    let l = e.lyapunov().map_err(|err| CliError::core(label, err))?;
    output::write_lyapunov(path, cfg, label, &l)
}

pub fn run_flights(
    cfg: &ExperimentConfig,
    traj_path: &Path,
    flights_path: &Path,
    label: &str,
) -> Result<Vec<PathBuf>, CliError> {
    let e = cfg.experiment()?;
    warn_if_stiff(cfg);
    let traj = e.simulate().map_err(|err| CliError::core(label, err))?;
    let stats = match &traj {
        thermocav_core::AnyTrajectory::ZeroT(t) => thermocav_core::analysis::levy_flights(
            &t.after(e.transient),
            e.flights.min_length,
            e.flights.p_threshold,
        ),
        thermocav_core::AnyTrajectory::Thermal(t) => thermocav_core::analysis::levy_flights(
            &t.after(e.transient),
            e.flights.min_length,
            e.flights.p_threshold,
        ),
    }
    .map_err(|err| CliError::core(label, err))?;
    Ok(vec![
        output::write_trajectory(traj_path, cfg, label, &traj)?,
        output::write_flights(flights_path, cfg, label, &stats)?,
    ])
}

pub fn run_sweep(
    cfg: &ExperimentConfig,
    path: &Path,
    label: &str,
    threads: Option<usize>,
) -> Result<(PathBuf, SweepResult), CliError> {
    let base = cfg.experiment()?;
    let (grid, diagnostic) = cfg.grid()?;
    let cells = grid
        .cells(&base, cfg.sweep.budget)
        .map_err(|err| CliError::core("sweep", err))?;
    if cells.iter().any(|c| c.experiment.params.temperature.is_stiff()) {
        eprintln!("warning: {label}: grid contains beta below {}", thermocav_core::thermal::STIFF_BETA);
    }
    let r = pool::evaluate(&grid, cells, diagnostic, threads)?;
    Ok((output::write_sweep(path, cfg, label, &r)?, r))
}
