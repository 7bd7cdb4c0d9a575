//! Process-wide solver settings.
//!
//! Every exact solver refuses inputs larger than the configured cell cap.
//! The cap defaults to a 24×24 matrix and can be raised up to the
//! representation limit of 64 rows by 64 columns.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMatrix, MAX_DIM};

pub const DEFAULT_MAX_CELLS: usize = 24 * 24;

static MAX_CELLS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_CELLS);
static PARALLEL: AtomicBool = AtomicBool::new(true);

pub fn max_cells() -> usize {
    MAX_CELLS.load(Ordering::Relaxed)
}

/// Sets the cell cap. Values above `64 * 64` are clamped.
pub fn set_max_cells(cells: usize) {
    MAX_CELLS.store(cells.min(MAX_DIM * MAX_DIM), Ordering::Relaxed);
}

/// Whether solvers fan work out over the rayon pool. Always false when the
/// crate is built without the `parallel` feature.
pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && PARALLEL.load(Ordering::Relaxed)
}

pub fn set_parallel(enabled: bool) {
    PARALLEL.store(enabled, Ordering::Relaxed);
}

pub(crate) fn check_size(a: &BinaryMatrix) -> Result<()> {
    let cells = a.n_rows() * a.n_cols();
    let cap = max_cells();
    if cells > cap {
        return Err(Error::ResourceLimit(format!(
            "{}x{} matrix has {cells} cells, cap is {cap}",
            a.n_rows(),
            a.n_cols()
        )));
    }
    Ok(())
}
