use std::ops::RangeInclusive;

use num_rational::Ratio;

use super::Analyzer;
use crate::error::{Error, Result};

/// Box counts of the graph `{(t, x_i(t))}` and their log-log slope.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    pub levels: Vec<usize>,
    pub box_counts: Vec<u64>,
    /// Least-squares slope of `log3 N(L)` against `L`.
    pub slope: f64,
    /// `2 - 1/n`.
    pub expected: Ratio<u32>,
}

/// `log_3 v` for `v >= 1`, exact on powers of three.
pub fn log3(v: u64) -> f64 {
    assert!(v >= 1, "log3 of zero");
    let k = v.ilog(3);
    let rest = v as f64 / 3f64.powi(k as i32);
    k as f64 + rest.ln() / 3f64.ln()
}

/// Ordinary least-squares slope of `ys` against `xs`.
///
/// Panics if the inputs differ in length or hold fewer than two distinct `x`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    assert!(sxx > 0.0, "slope needs two distinct abscissae");
    sxy / sxx
}

impl Analyzer {
    /// Number of closed boxes of side `3^-L` meeting the graph of `x_i`.
    ///
    /// On every parameter cell of length `3^-nL`, `x_i` covers exactly the
    /// interval between its endpoint values, which are adjacent multiples of
    /// `3^-L`. That cell therefore meets rows `lo` and `lo + 1` of its box
    /// column (the latter only on its boundary, and not past the top).
    pub fn box_count(&self, i: usize, level: usize) -> Result<u64> {
        let n = self.dim();
        let values = self.grid_values(i, level)?;
        let rows = 3u64.pow(level as u32);
        let per_column = 3usize.pow(((n - 1) * level) as u32);
        // stamp[r] == column + 1 marks row r as already counted in this column
        let mut stamp = vec![0u64; rows as usize];
        let mut total = 0u64;
        for (column, cells) in values
            .windows(2)
            .collect::<Vec<_>>()
            .chunks(per_column)
            .enumerate()
        {
            let mark = column as u64 + 1;
            for w in cells {
                let lo = w[0].min(w[1]);
                for r in [lo, (lo + 1).min(rows - 1)] {
                    if stamp[r as usize] != mark {
                        stamp[r as usize] = mark;
                        total += 1;
                    }
                }
            }
        }
        Ok(total)
    }

    pub fn box_counting(
        &self,
        i: usize,
        levels: RangeInclusive<usize>,
    ) -> Result<DimensionEstimate> {
        let levels: Vec<usize> = levels.collect();
        if levels.len() < 2 {
            return Err(Error::InvalidArgument(
                "box counting needs at least two levels".into(),
            ));
        }
        let box_counts = levels
            .iter()
            .map(|&l| self.box_count(i, l))
            .collect::<Result<Vec<_>>>()?;
        let xs: Vec<f64> = levels.iter().map(|&l| l as f64).collect();
        let ys: Vec<f64> = box_counts.iter().map(|&c| log3(c)).collect();
        let n = self.dim() as u32;
        Ok(DimensionEstimate {
            slope: least_squares_slope(&xs, &ys),
            levels,
            box_counts,
            expected: Ratio::new(2 * n - 1, n),
        })
    }
}
