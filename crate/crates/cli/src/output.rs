//! CSV writers. Every file opens with `#`-prefixed metadata lines (code
//! version, variant, seed, full config echo) followed by a fixed header row.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use thermocav_core::analysis::{CellStatus, FlightStats, LyapunovEstimate, PoincareSection, SweepResult};
use thermocav_core::model::{
    energy_thermal, energy_zero_t, excitation_thermal, excitation_zero_t, spin_norm,
};
use thermocav_core::{AnyTrajectory, ThermalState, Variant, ZeroTState};

use crate::config::ExperimentConfig;
use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// Config echo for file headers. `output_path` is left out: it says where
/// the files went, not how they were computed, and keeping it would make
/// identical runs into different directories differ byte-wise.
fn header_echo(cfg: &ExperimentConfig) -> String {
    let mut v = serde_json::to_value(cfg).expect("config serializes");
    if let Some(m) = v.as_object_mut() {
        m.remove("output_path");
    }
    v.to_string()
}

pub struct CsvOut {
    path: PathBuf,
    writer: csv::Writer<BufWriter<File>>,
}

impl CsvOut {
    pub fn create(path: &Path, cfg: &ExperimentConfig, label: &str, header: &[&str]) -> Result<Self, CliError> {
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        let mut w = BufWriter::new(file);
        let meta = format!(
            "# thermocav {VERSION}\n# run: {label}\n# variant: {}\n# seed: {}\n# config: {}\n",
            Variant::from(cfg.params.variant).name(),
            cfg.seed,
            header_echo(cfg)
        );
        w.write_all(meta.as_bytes()).map_err(|e| CliError::io(path, e))?;
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        writer.write_record(header).map_err(|e| CliError::csv(path, e))?;
        Ok(CsvOut { path: path.to_path_buf(), writer })
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<(), CliError> {
        let fields: Vec<String> = fields.into_iter().collect();
        self.writer.write_record(&fields).map_err(|e| CliError::csv(&self.path, e))
    }

    pub fn finish(mut self) -> Result<PathBuf, CliError> {
        self.writer.flush().map_err(|e| CliError::io(&self.path, e))?;
        Ok(self.path)
    }
}

fn reals(v: &[f64]) -> impl Iterator<Item = String> + '_ {
    v.iter().map(|&x| fmt_f64(x))
}

pub fn write_trajectory(
    path: &Path,
    cfg: &ExperimentConfig,
    label: &str,
    traj: &AnyTrajectory,
) -> Result<PathBuf, CliError> {
    let e = cfg.experiment()?;
    match traj {
        AnyTrajectory::ZeroT(t) => {
            let mut out = CsvOut::create(
                path,
                cfg,
                label,
                &["tau", "x", "p", "sx", "sy", "sz", "ax", "ay", "E", "N", "snorm"],
            )?;
            for (tau, y) in t.times.iter().zip(&t.states) {
                let s = ZeroTState::from_array(*y);
                let mut row = vec![*tau];
                row.extend_from_slice(y);
                row.extend([energy_zero_t(&s, &e.params), excitation_zero_t(&s), spin_norm(&s)]);
                out.row(reals(&row))?;
            }
            out.finish()
        }
        AnyTrajectory::Thermal(t) => {
            let consistent = e.params.variant == Variant::Consistent;
            let mut header = vec!["tau", "x", "p", "p_tilde", "sx", "sy", "sz", "ax", "ay", "atx", "aty"];
            if consistent {
                header.extend(["E", "N"]);
            }
            header.push("snorm");
            let mut out = CsvOut::create(path, cfg, label, &header)?;
            let f = e.params.factors().map_err(|err| CliError::Config(err.to_string()))?;
            for (tau, y) in t.times.iter().zip(&t.states) {
                let s = ThermalState::from_array(*y);
                let mut row = vec![*tau];
                row.extend_from_slice(y);
                if consistent {
                    row.extend([energy_thermal(&s, &e.params, &f), excitation_thermal(&s, &f)]);
                }
                row.push(spin_norm(&s));
                out.row(reals(&row))?;
            }
            out.finish()
        }
    }
}

pub fn write_section(path: &Path, cfg: &ExperimentConfig, label: &str, s: &PoincareSection) -> Result<PathBuf, CliError> {
    let mut out = CsvOut::create(path, cfg, label, &["u", "v", "tau"])?;
    for (&(u, v), &tau) in s.points.iter().zip(&s.taus) {
        out.row(reals(&[u, v, tau]))?;
    }
    out.finish()
}

pub fn write_lyapunov(path: &Path, cfg: &ExperimentConfig, label: &str, l: &LyapunovEstimate) -> Result<PathBuf, CliError> {
    let mut out = CsvOut::create(path, cfg, label, &["n", "tau", "lambda_running"])?;
    for (k, &lam) in l.history.iter().enumerate() {
        let n = k + 1;
        let tau = cfg.transient + n as f64 * l.renorm_interval;
        out.row([n.to_string(), fmt_f64(tau), fmt_f64(lam)])?;
    }
    out.finish()
}

pub fn write_flights(path: &Path, cfg: &ExperimentConfig, label: &str, f: &FlightStats) -> Result<PathBuf, CliError> {
    let mut out = CsvOut::create(path, cfg, label, &["tau_start", "tau_end", "dx"])?;
    for fl in &f.flights {
        out.row(reals(&[fl.tau_start, fl.tau_end, fl.dx]))?;
    }
    out.finish()
}

pub fn write_sweep(path: &Path, cfg: &ExperimentConfig, label: &str, r: &SweepResult) -> Result<PathBuf, CliError> {
    let mut header: Vec<&str> = r.axes.iter().map(|a| a.param.name()).collect();
    header.extend(["value", "status"]);
    let mut out = CsvOut::create(path, cfg, label, &header)?;
    for c in &r.cells {
        let status = match &c.status {
            CellStatus::Ok => "ok".to_string(),
            CellStatus::Failed(e) => format!("failed: {e}"),
        };
        out.row(reals(&c.coords).chain([fmt_f64(c.value), status]))?;
    }
    out.finish()
}
