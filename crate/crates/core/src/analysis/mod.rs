//! Finite-scale checks of the distributional and fractal properties of the
//! coordinate functions.
//!
//! Every estimator enumerates a triadic parameter grid and evaluates the curve
//! exactly; floating point only appears in the final reported ratios and
//! slopes. Grid sizes are bounded by [`Analyzer::max_cells`].

mod census;
mod dimension;
mod histogram;
mod holder;
mod witness;

pub use census::CensusTable;
pub use dimension::{least_squares_slope, log3, DimensionEstimate};
pub use histogram::{BinRule, Histogram};
pub use holder::{HolderReport, HOLDER_CONSTANT};
pub use witness::Witness;

use crate::curve::PeanoCurve;
use crate::error::{Error, Result};
use crate::ternary::DigitSeq;

/// Default ceiling on grid cells per enumeration (`3^16`).
pub const DEFAULT_MAX_CELLS: u64 = 43_046_721;

/// Estimators for one curve dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Analyzer {
    curve: PeanoCurve,
    max_cells: u64,
}

impl Analyzer {
    pub fn new(dim: usize) -> Result<Self> {
        Ok(Analyzer {
            curve: PeanoCurve::new(dim)?,
            max_cells: DEFAULT_MAX_CELLS,
        })
    }

    pub fn with_max_cells(mut self, max_cells: u64) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn curve(&self) -> &PeanoCurve {
        &self.curve
    }

    pub fn dim(&self) -> usize {
        self.curve.dim()
    }

    pub fn max_cells(&self) -> u64 {
        self.max_cells
    }

    /// `3^digits`, provided the grid fits the cell budget.
    fn grid_cells(&self, digits: usize) -> Result<u64> {
        let required = 3u128.checked_pow(digits as u32).unwrap_or(u128::MAX);
        if required > self.max_cells as u128 {
            return Err(Error::ResourceLimit {
                required,
                limit: self.max_cells,
            });
        }
        Ok(required as u64)
    }

    /// `x_i(s / 3^{n depth}) * 3^depth` for `s = 0 ..= 3^{n depth}`.
    fn grid_values(&self, i: usize, depth: usize) -> Result<Vec<u64>> {
        self.curve.check_index(i)?;
        let n = self.dim();
        let cells = self.grid_cells(n * depth)?;
        let mut values = Vec::with_capacity(cells as usize + 1);
        for s in 0..cells {
            let t = DigitSeq::from_index(s, n * depth);
            let (digits, two) = self.curve.coordinate_scaled(&t, i, depth);
            values.push(digits + u64::from(two));
        }
        values.push(3u64.pow(depth as u32));
        Ok(values)
    }
}
