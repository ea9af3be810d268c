//! Parallel sweep evaluation. Cells run on a private rayon pool and are
//! collected back in cell-index order, so the result does not depend on
//! the thread count or scheduling.

use rayon::prelude::*;
use thermocav_core::analysis::sweep::evaluate_cell;
use thermocav_core::analysis::{Diagnostic, SweepCell, SweepGrid, SweepResult};

use crate::CliError;

pub fn evaluate(
    grid: &SweepGrid,
    cells: Vec<SweepCell>,
    diagnostic: Diagnostic,
    threads: Option<usize>,
) -> Result<SweepResult, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Io(format!("thread pool: {e}")))?;
    let mut results: Vec<_> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| evaluate_cell(c, diagnostic))
            .collect()
    });
    results.sort_by_key(|r: &thermocav_core::analysis::CellResult| r.index);
    Ok(SweepResult {
        axes: grid.axes.clone(),
        diagnostic,
        cells: results,
    })
}
